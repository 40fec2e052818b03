#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "cli.hpp"
#include "fibcm/field_io.hpp"
#include "fibcm/torus_field.hpp"

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fibcm_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    RunResult r;
    r.code = fibcm::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const std::string kGenus2 = std::string(FIBCM_DATA_DIR) + "/genus2.json";

}  // namespace

TEST_CASE("cm-degree reports the canonical genus-2 example") {
    TempDir dir;
    const std::string out_json = dir.file("cm.json");
    const RunResult r = run({"cm-degree", "--input", kGenus2, "--out", out_json});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out ==
          "s = -1\n"
          "cm_degree = 32\n"
          "alpha_degree = 2\n"
          "nef_sign = positive\n");
    CHECK(read_file(out_json) ==
          "{\n"
          "  \"n\": 1,\n"
          "  \"s\": \"-1\",\n"
          "  \"cm_degree\": \"32\",\n"
          "  \"alpha_degree\": \"2\",\n"
          "  \"nef_sign\": \"positive\"\n"
          "}\n");
}

TEST_CASE("ch-expand prints the expansion and writes the report") {
    TempDir dir;
    const std::string out_json = dir.file("ch.json");
    const RunResult r = run({"ch-expand", "--input", kGenus2, "--out", out_json});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "combination = 8*m^2\n"
          "top_vanishes = true\n"
          "m2n_coefficient = 8\n"
          "alpha_degree = 2\n"
          "nef_sign = positive\n");
    CHECK(read_file(out_json).find("\"combination\": {\"2\": \"8\"}") != std::string::npos);
}

TEST_CASE("twist-check confirms invariance") {
    const RunResult r = run({"twist-check", "--input", kGenus2, "--deg", "3"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "cm_degree = 32\n"
          "cm_degree_twisted = 32\n"
          "alpha_degree = 2\n"
          "alpha_degree_twisted = 2\n"
          "invariant = true\n");
}

TEST_CASE("morita prints the bare genus") {
    const RunResult r = run({"morita", "--g", "2", "--m", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "6\n");
}

TEST_CASE("ma-solve with synthetic zero data") {
    TempDir dir;
    const std::string phi_csv = dir.file("phi.csv");
    const RunResult r =
        run({"ma-solve", "--grid", "32", "--lambda", "-1", "--out-phi", phi_csv});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "converged = true\n"
          "newton_iterations = 1\n"
          "final_residual = 0\n"
          "min_density = 1\n");
    const fibcm::NamedField phi = fibcm::read_field_csv(phi_csv);
    CHECK(phi.name == "phi");
    CHECK(phi.field.max_abs() <= 1e-12);
}

TEST_CASE("usage errors exit with 2") {
    TempDir dir;
    SUBCASE("no subcommand") {
        const RunResult r = run({});
        CHECK(r.code == 2);
        CHECK(r.err.find("usage error:") == 0);
    }
    SUBCASE("unknown subcommand") {
        CHECK(run({"frobnicate"}).code == 2);
    }
    SUBCASE("unknown flag") {
        CHECK(run({"morita", "--g", "2", "--m", "2", "--bogus"}).code == 2);
    }
    SUBCASE("missing required option") {
        CHECK(run({"cm-degree"}).code == 2);
    }
    SUBCASE("ma-solve needs f or grid") {
        CHECK(run({"ma-solve", "--lambda", "-1"}).code == 2);
    }
    SUBCASE("ma-verify needs at least one residual input") {
        TempDir d2;
        const std::string phi = d2.file("phi.csv");
        fibcm::write_field_csv(phi, {"phi", fibcm::TorusField(fibcm::make_grid(8))});
        CHECK(run({"ma-verify", "--phi", phi, "--lambda", "0"}).code == 2);
    }
}

TEST_CASE("domain errors exit with 1") {
    TempDir dir;
    SUBCASE("grid mismatch against the field file") {
        const std::string f_csv = dir.file("f.csv");
        fibcm::write_field_csv(f_csv, {"f", fibcm::TorusField(fibcm::make_grid(8))});
        const RunResult r = run({"ma-solve", "--f", f_csv, "--grid", "64"});
        CHECK(r.code == 1);
        CHECK(r.err.find("does not match") != std::string::npos);
    }
    SUBCASE("tau expression errors carry the offset") {
        const RunResult r =
            run({"lab-wp", "--tau", "i + *b", "--grid", "64", "--out", dir.file("a.csv")});
        CHECK(r.code == 1);
        CHECK(r.err.find("offset 4") != std::string::npos);
    }
    SUBCASE("positivity violations are rejected") {
        const RunResult r =
            run({"lab-wp", "--tau", "b", "--grid", "64", "--out", dir.file("a.csv")});
        CHECK(r.code == 1);
    }
}

TEST_CASE("help mentions the expression grammar") {
    const RunResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Tau expression grammar") != std::string::npos);
    CHECK(r.out.find("p/q") != std::string::npos);
}

TEST_CASE("repeated invocations are byte identical") {
    TempDir dir;
    const std::string a1 = dir.file("a1.csv");
    const std::string a2 = dir.file("a2.csv");
    for (const std::string& p : {a1, a2}) {
        const RunResult r =
            run({"lab-wp", "--tau", "i + 0.05*b", "--grid", "64", "--out", p});
        REQUIRE(r.code == 0);
    }
    CHECK(read_file(a1) == read_file(a2));
    CHECK(read_file(fibcm::sidecar_path(a1)) == read_file(fibcm::sidecar_path(a2)));
}

TEST_CASE("the full pipeline closes at the advertised residual") {
    TempDir dir;
    const std::string a_csv = dir.file("a.csv");
    const std::string f_csv = dir.file("f.csv");
    const std::string phi_csv = dir.file("phi.csv");
    const std::string mkf_json = dir.file("mkf.json");
    const std::string verify_json = dir.file("verify.json");

    REQUIRE(run({"lab-wp", "--tau", "i + 0.05*b", "--grid", "128", "--out", a_csv}).code == 0);
    REQUIRE(run({"lab-make-f", "--a", a_csv, "--out-f", f_csv, "--out-report", mkf_json}).code ==
            0);
    const nlohmann::json mkf = nlohmann::json::parse(read_file(mkf_json));
    const double lambda = mkf.at("lambda").get<double>();
    CHECK(lambda < 0.0);

    REQUIRE(run({"ma-solve", "--f", f_csv, "--lambda", format_real(lambda), "--tol", "1e-12",
                 "--out-phi", phi_csv})
                .code == 0);
    REQUIRE(run({"ma-verify", "--phi", phi_csv, "--f", f_csv, "--a", a_csv, "--lambda",
                 format_real(lambda), "--out", verify_json})
                .code == 0);

    const nlohmann::json verify = nlohmann::json::parse(read_file(verify_json));
    CHECK(verify.at("untraced_residual").get<double>() <= 1e-8);
    CHECK(verify.at("traced_residual").get<double>() <= 1e-6);
}

TEST_CASE("the installed binary behaves like the library entry point") {
    TempDir dir;
    const std::string out_file = dir.file("morita.txt");
    const std::string cmd = std::string(FIBCM_TOOL_PATH) + " morita --g 2 --m 2 > " + out_file;
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(read_file(out_file) == "6\n");

    const int bad = std::system((std::string(FIBCM_TOOL_PATH) + " morita --g 1 --m 1 2> " +
                                 dir.file("err.txt"))
                                    .c_str());
    REQUIRE(WIFEXITED(bad));
    CHECK(WEXITSTATUS(bad) == 1);
}

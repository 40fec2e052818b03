#include "fibcm/field_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "json.hpp"

#include "fibcm/errors.hpp"
#include "fibcm/json_writer.hpp"

namespace fibcm {

std::string sidecar_path(const std::string& csv_path) { return csv_path + ".json"; }

void write_field_csv(const std::string& csv_path, const NamedField& nf) {
    const int n = nf.field.n();
    if (n == 0) throw DomainError("cannot write an uninitialized field");
    if (!nf.field.finite()) throw DomainError("refusing to write non-finite field values");

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error("cannot open " + csv_path + " for writing");
    char buf[40];
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", nf.field.at(r, c));
            if (c != 0) csv << ',';
            csv << buf;
        }
        csv << '\n';
    }
    csv.close();
    if (!csv) throw Error("write failed for " + csv_path);

    JsonWriter w;
    w.add_int("N", n);
    w.add_string("field", nf.name);
    const std::string side = sidecar_path(csv_path);
    std::ofstream sc(side, std::ios::binary);
    if (!sc) throw Error("cannot open " + side + " for writing");
    sc << w.str();
    sc.close();
    if (!sc) throw Error("write failed for " + side);
}

NamedField read_field_csv(const std::string& csv_path) {
    const std::string side = sidecar_path(csv_path);
    std::ifstream sc(side, std::ios::binary);
    if (!sc) throw Error("cannot open " + side);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(sc);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in " + side + ": " + e.what(), e.byte);
    }
    if (!j.is_object() || j.size() != 2 || !j.contains("N") || !j.contains("field")) {
        throw DomainError(side + " must contain exactly the keys \"N\" and \"field\"");
    }
    if (!j["N"].is_number_integer()) throw DomainError(side + ": \"N\" must be an integer");
    if (!j["field"].is_string()) throw DomainError(side + ": \"field\" must be a string");
    const long long n_ll = j["N"].get<long long>();
    if (n_ll < 8 || n_ll > 4096) throw DomainError(side + ": \"N\" out of range (8..4096)");
    const TorusGrid grid = make_grid(static_cast<int>(n_ll));
    const int n = grid.N;

    std::ifstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error("cannot open " + csv_path);
    NamedField out{j["field"].get<std::string>(), TorusField(grid)};
    std::string line;
    for (int r = 0; r < n; ++r) {
        if (!std::getline(csv, line)) {
            throw DomainError(csv_path + ": expected " + std::to_string(n) + " rows, found " +
                              std::to_string(r));
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const char* p = line.c_str();
        for (int c = 0; c < n; ++c) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p) {
                throw DomainError(csv_path + ": row " + std::to_string(r) + " column " +
                                  std::to_string(c) + " is not a number");
            }
            out.field.at(r, c) = v;
            p = end;
            while (*p == ' ') ++p;
            if (c + 1 < n) {
                if (*p != ',') {
                    throw DomainError(csv_path + ": row " + std::to_string(r) + " has fewer than " +
                                      std::to_string(n) + " values");
                }
                ++p;
            }
        }
        while (*p == ' ') ++p;
        if (*p != '\0') {
            throw DomainError(csv_path + ": row " + std::to_string(r) + " has trailing characters");
        }
    }
    while (std::getline(csv, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) throw DomainError(csv_path + ": unexpected extra rows");
    }
    if (!out.field.finite()) throw DomainError(csv_path + " contains non-finite values");
    return out;
}

}  // namespace fibcm

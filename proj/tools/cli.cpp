#include "cli.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fibcm/cm_calculus.hpp"
#include "fibcm/data_io.hpp"
#include "fibcm/errors.hpp"
#include "fibcm/fibration_lab.hpp"
#include "fibcm/field_io.hpp"
#include "fibcm/json_writer.hpp"
#include "fibcm/ma_solver.hpp"
#include "fibcm/tau_expr.hpp"

namespace fibcm::cli {

namespace {

const char* help_footer =
    "Tau expression grammar (EBNF):\n"
    "  expr   = term { (\"+\" | \"-\") term } ;\n"
    "  term   = factor { (\"*\" | \"/\") factor } ;\n"
    "  factor = \"-\" factor | power ;\n"
    "  power  = atom [ \"^\" [ \"-\" ] integer ] ;\n"
    "  atom   = number | number \"i\" | \"i\" | \"b\" | \"exp\" \"(\" expr \")\"\n"
    "         | \"(\" expr \")\" ;\n"
    "  number = digits [ \".\" digits ] [ (\"e\" | \"E\") [ sign ] digits ] ;\n"
    "Examples: \"i\", \"2i\", \"i + 0.05*b\", \"(1+2i)*exp(b)\", \"i/(1 - 0.1*b^2)\".\n"
    "\n";

void emit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << text;
    out.close();
    if (!out) throw Error("write failed for " + path);
}

struct CmDegreeArgs {
    std::string input;
    std::string out;
};

void run_cm_degree(const CmDegreeArgs& a, std::ostream& out) {
    const FibrationData d = fibration_from_json_file(a.input);
    const Rational s = compute_s(d);
    const Rational cm = cm_degree(d);
    const Rational alpha = alpha_degree(d);
    const NefSign nef = alpha.sign() > 0   ? NefSign::positive
                        : alpha.sign() < 0 ? NefSign::negative
                                           : NefSign::zero;
    out << "s = " << s.str() << "\n";
    out << "cm_degree = " << cm.str() << "\n";
    out << "alpha_degree = " << alpha.str() << "\n";
    out << "nef_sign = " << to_string(nef) << "\n";
    if (!a.out.empty()) {
        JsonWriter w;
        w.add_int("n", d.n);
        w.add_rational("s", s);
        w.add_rational("cm_degree", cm);
        w.add_rational("alpha_degree", alpha);
        w.add_string("nef_sign", to_string(nef));
        emit(a.out, w.str());
    }
}

struct ChExpandArgs {
    std::string input;
    std::string out;
};

void run_ch_expand(const ChExpandArgs& a, std::ostream& out) {
    const FibrationData d = fibration_from_json_file(a.input);
    const CHReport rep = ch_expand(d);
    out << "combination = " << rep.combination.str() << "\n";
    out << "top_vanishes = " << (rep.top_vanishes ? "true" : "false") << "\n";
    out << "m2n_coefficient = " << rep.m2n_coefficient.str() << "\n";
    out << "alpha_degree = " << rep.alpha_degree.str() << "\n";
    out << "nef_sign = " << to_string(rep.nef_sign) << "\n";
    if (!a.out.empty()) emit(a.out, ch_report_json(rep));
}

struct TwistCheckArgs {
    std::string input;
    std::string deg;
    std::string out;
};

void run_twist_check(const TwistCheckArgs& a, std::ostream& out) {
    const FibrationData d = fibration_from_json_file(a.input);
    const Rational deg = Rational::parse(a.deg);
    const FibrationData t = twist(d, deg);
    const Rational cm0 = cm_degree(d);
    const Rational cm1 = cm_degree(t);
    const Rational al0 = alpha_degree(d);
    const Rational al1 = alpha_degree(t);
    const bool invariant = cm0 == cm1 && al0 == al1;
    out << "cm_degree = " << cm0.str() << "\n";
    out << "cm_degree_twisted = " << cm1.str() << "\n";
    out << "alpha_degree = " << al0.str() << "\n";
    out << "alpha_degree_twisted = " << al1.str() << "\n";
    out << "invariant = " << (invariant ? "true" : "false") << "\n";
    if (!a.out.empty()) {
        JsonWriter w;
        w.add_rational("deg", deg);
        w.add_rational("cm_degree", cm0);
        w.add_rational("cm_degree_twisted", cm1);
        w.add_rational("alpha_degree", al0);
        w.add_rational("alpha_degree_twisted", al1);
        w.add_bool("invariant", invariant);
        emit(a.out, w.str());
    }
    if (!invariant) throw Error("twist invariance violated");
}

struct MaSolveArgs {
    std::string f_path;
    int grid = 0;
    std::string phi0_path;
    std::string out_phi;
    std::string out_report;
    SolveConfig cfg;
};

void run_ma_solve(const MaSolveArgs& a, std::ostream& out) {
    TorusField f;
    if (!a.f_path.empty()) {
        f = read_field_csv(a.f_path).field;
        if (a.grid != 0 && a.grid != f.n()) {
            throw DomainError("--grid " + std::to_string(a.grid) + " does not match the " +
                              std::to_string(f.n()) + "-point field in " + a.f_path);
        }
    } else if (a.grid != 0) {
        f = TorusField(make_grid(a.grid));
    } else {
        throw CLI::ValidationError("ma-solve", "one of --f or --grid is required");
    }

    SolveReport report;
    if (!a.phi0_path.empty()) {
        report = solve_ma(f, a.cfg, read_field_csv(a.phi0_path).field);
    } else {
        report = solve_ma(f, a.cfg);
    }

    out << "converged = " << (report.converged ? "true" : "false") << "\n";
    out << "newton_iterations = " << report.residual_history.size() << "\n";
    out << "final_residual = " << json_real(report.residual_history.back()) << "\n";
    out << "min_density = " << json_real(report.min_density) << "\n";
    if (!a.out_phi.empty()) write_field_csv(a.out_phi, {"phi", report.phi});
    if (!a.out_report.empty()) {
        JsonWriter w;
        w.add_real("lambda", a.cfg.lambda);
        w.add_real("tol", a.cfg.tol);
        w.add_bool("converged", report.converged);
        w.add_int("newton_iterations", static_cast<long long>(report.residual_history.size()));
        w.add_real("final_residual", report.residual_history.back());
        w.add_real("min_density", report.min_density);
        w.add_raw("residual_history", json_array_reals(report.residual_history));
        emit(a.out_report, w.str());
    }
    if (!report.converged) {
        throw Error("no convergence within " + std::to_string(a.cfg.max_newton) +
                    " Newton iterations (outputs were written)");
    }
}

struct MaVerifyArgs {
    std::string phi_path;
    std::string f_path;
    std::string a_path;
    double lambda = 0.0;
    std::string out;
};

void run_ma_verify(const MaVerifyArgs& a, std::ostream& out) {
    if (a.f_path.empty() && a.a_path.empty()) {
        throw CLI::ValidationError("ma-verify", "at least one of --f or --a is required");
    }
    const TorusField phi = read_field_csv(a.phi_path).field;
    JsonWriter w;
    w.add_real("lambda", a.lambda);
    if (!a.f_path.empty()) {
        const double u = untraced_residual(phi, read_field_csv(a.f_path).field, a.lambda);
        out << "untraced_residual = " << json_real(u) << "\n";
        w.add_real("untraced_residual", u);
    }
    if (!a.a_path.empty()) {
        const double t = traced_residual(phi, read_field_csv(a.a_path).field, a.lambda);
        out << "traced_residual = " << json_real(t) << "\n";
        w.add_real("traced_residual", t);
    }
    if (!a.out.empty()) emit(a.out, w.str());
}

struct LabArgs {
    std::string tau;
    int grid = 0;
    int fibre_grid = 8;
    std::string out;
};

void run_lab_wp(const LabArgs& a, std::ostream& out) {
    const TauFamily fam = make_tau_family(parse_tau(a.tau), make_grid(a.grid), a.fibre_grid);
    const TwistForm wp = weil_petersson_form(fam);
    out << "alpha = " << json_real(alpha_from_twist(wp)) << "\n";
    out << "density_min = " << json_real(wp.density.min_value()) << "\n";
    out << "density_max_abs = " << json_real(wp.density.max_abs()) << "\n";
    write_field_csv(a.out, {"a_density", wp.density});
}

void run_lab_average(const LabArgs& a, std::ostream& out) {
    const TauFamily fam = make_tau_family(parse_tau(a.tau), make_grid(a.grid), a.fibre_grid);
    const TwistForm avg = fibre_average_a(fam);
    const TwistForm wp = weil_petersson_form(fam);
    out << "alpha = " << json_real(alpha_from_twist(avg)) << "\n";
    out << "max_abs_diff_vs_closed_form = " << json_real(max_abs_diff(avg.density, wp.density))
        << "\n";
    write_field_csv(a.out, {"a_density", avg.density});
}

struct LabMakeFArgs {
    std::string a_path;
    std::string tau;
    int grid = 0;
    int fibre_grid = 8;
    std::string out_f;
    std::string out_report;
};

void run_lab_make_f(const LabMakeFArgs& a, std::ostream& out) {
    TorusField density;
    if (!a.a_path.empty()) {
        density = read_field_csv(a.a_path).field;
    } else if (!a.tau.empty() && a.grid != 0) {
        const TauFamily fam = make_tau_family(parse_tau(a.tau), make_grid(a.grid), a.fibre_grid);
        density = weil_petersson_form(fam).density;
    } else {
        throw CLI::ValidationError("lab-make-f", "either --a or both --tau and --grid are required");
    }
    const double lambda = compute_lambda(density);
    const TorusField f = make_f(density, lambda);
    out << "lambda = " << json_real(lambda) << "\n";
    out << "mean_a = " << json_real(density.mean()) << "\n";
    write_field_csv(a.out_f, {"f", f});
    if (!a.out_report.empty()) {
        JsonWriter w;
        w.add_real("lambda", lambda);
        w.add_real("mean_a", density.mean());
        emit(a.out_report, w.str());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fibration degree calculus, torus Monge-Ampere solver, elliptic family lab"};
    app.require_subcommand(1);
    app.footer(std::string(help_footer) + fibration_schema_text());

    CmDegreeArgs cm_args;
    auto* cm = app.add_subcommand("cm-degree",
                                  "CM line bundle degree and alpha degree from fibration data");
    cm->add_option("--input", cm_args.input, "fibration data JSON")->required();
    cm->add_option("--out", cm_args.out, "write the summary as JSON");
    cm->callback([&] { run_cm_degree(cm_args, out); });

    ChExpandArgs ch_args;
    auto* ch = app.add_subcommand("ch-expand",
                                  "asymptotic expansion of the stability combination");
    ch->add_option("--input", ch_args.input, "fibration data JSON")->required();
    ch->add_option("--out", ch_args.out, "write the full report as JSON");
    ch->callback([&] { run_ch_expand(ch_args, out); });

    TwistCheckArgs tw_args;
    auto* tw = app.add_subcommand("twist-check",
                                  "verify cm/alpha degrees are unchanged by a pullback twist");
    tw->add_option("--input", tw_args.input, "fibration data JSON")->required();
    tw->add_option("--deg", tw_args.deg, "twist degree, rational \"p/q\"")->required();
    tw->add_option("--out", tw_args.out, "write the comparison as JSON");
    tw->callback([&] { run_twist_check(tw_args, out); });

    long long morita_g = 0;
    long long morita_m = 0;
    auto* mo = app.add_subcommand("morita", "base genus of the m-fold covering construction");
    mo->add_option("--g", morita_g, "fibre genus, at least 2")->required();
    mo->add_option("--m", morita_m, "covering parameter, at least 1")->required();
    mo->callback([&] { out << morita_genus(morita_g, morita_m) << "\n"; });

    MaSolveArgs ms_args;
    auto* ms = app.add_subcommand("ma-solve",
                                  "solve log(1 + 0.5*Lap(phi)) = lambda*phi - f on the torus");
    ms->add_option("--f", ms_args.f_path, "data field CSV");
    ms->add_option("--grid", ms_args.grid, "grid size; with --f, checked against the file");
    ms->add_option("--lambda", ms_args.cfg.lambda, "equation constant, <= 0");
    ms->add_option("--tol", ms_args.cfg.tol, "max-norm residual target");
    ms->add_option("--max-newton", ms_args.cfg.max_newton, "Newton iteration cap per step");
    ms->add_option("--continuity-steps", ms_args.cfg.continuity_steps, "homotopy steps in t*f");
    ms->add_option("--damping", ms_args.cfg.damping, "initial Newton step scale in (0,1]");
    ms->add_option("--phi0", ms_args.phi0_path, "initial guess CSV");
    ms->add_option("--out-phi", ms_args.out_phi, "write the solution CSV");
    ms->add_option("--out-report", ms_args.out_report, "write the solve report JSON");
    ms->callback([&] { run_ma_solve(ms_args, out); });

    MaVerifyArgs mv_args;
    auto* mv = app.add_subcommand("ma-verify", "residuals of a solution field");
    mv->add_option("--phi", mv_args.phi_path, "solution CSV")->required();
    mv->add_option("--f", mv_args.f_path, "data field CSV, enables the un-traced residual");
    mv->add_option("--a", mv_args.a_path, "twist density CSV, enables the traced residual");
    mv->add_option("--lambda", mv_args.lambda, "equation constant")->required();
    mv->add_option("--out", mv_args.out, "write the residuals as JSON");
    mv->callback([&] { run_ma_verify(mv_args, out); });

    LabArgs wp_args;
    auto* wp = app.add_subcommand("lab-wp",
                                  "closed-form Weil-Petersson density of an elliptic family");
    wp->add_option("--tau", wp_args.tau, "tau(b) expression")->required();
    wp->add_option("--grid", wp_args.grid, "base chart samples per side")->required();
    wp->add_option("--fibre-grid", wp_args.fibre_grid, "fibre samples per side");
    wp->add_option("--out", wp_args.out, "density CSV path")->required();
    wp->callback([&] { run_lab_wp(wp_args, out); });

    LabArgs av_args;
    auto* av = app.add_subcommand("lab-average",
                                  "twist density by numerical fibre averaging");
    av->add_option("--tau", av_args.tau, "tau(b) expression")->required();
    av->add_option("--grid", av_args.grid, "base chart samples per side")->required();
    av->add_option("--fibre-grid", av_args.fibre_grid, "fibre samples per side");
    av->add_option("--out", av_args.out, "density CSV path")->required();
    av->callback([&] { run_lab_average(av_args, out); });

    LabMakeFArgs mkf_args;
    auto* mkf = app.add_subcommand("lab-make-f",
                                   "potential f with 0.5*Lap(f) = -a - lambda from a twist density");
    mkf->add_option("--a", mkf_args.a_path, "twist density CSV");
    mkf->add_option("--tau", mkf_args.tau, "tau(b) expression, used when --a is absent");
    mkf->add_option("--grid", mkf_args.grid, "base chart samples per side for --tau");
    mkf->add_option("--fibre-grid", mkf_args.fibre_grid, "fibre samples per side for --tau");
    mkf->add_option("--out-f", mkf_args.out_f, "potential CSV path")->required();
    mkf->add_option("--out-report", mkf_args.out_report, "write lambda and mean_a as JSON");
    mkf->callback([&] { run_lab_make_f(mkf_args, out); });

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("fibcm");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace fibcm::cli

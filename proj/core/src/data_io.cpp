#include "fibcm/data_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fibcm/errors.hpp"
#include "fibcm/json_writer.hpp"

namespace fibcm {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const Error& e) {
            throw DomainError(where + ": " + e.what());
        }
    }
    if (j.is_number_float()) {
        throw DomainError(where + ": floats are not accepted; use an integer or a \"p/q\" string");
    }
    throw DomainError(where + ": expected an integer or a \"p/q\" string");
}

std::vector<Rational> rational_list_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw DomainError(where + ": expected an array of rationals");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

}  // namespace

FibrationData fibration_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw DomainError("fibration data must be a JSON object");

    static const std::set<std::string> known = {"n",  "v",           "kl_fibre",
                                                "ell", "k",           "lower_order_h",
                                                "lower_order_push",   "s"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (known.count(key) == 0) throw DomainError("unknown key \"" + key + "\" in fibration data");
    }
    for (const char* required : {"n", "v", "kl_fibre", "ell", "k"}) {
        if (!j.contains(required)) {
            throw DomainError(std::string("missing key \"") + required + "\" in fibration data");
        }
    }
    if (!j["n"].is_number_integer()) throw DomainError("\"n\" must be an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1 || n > 64) throw DomainError("\"n\" must be between 1 and 64");

    std::vector<Rational> lower_h;
    std::vector<Rational> lower_push;
    if (j.contains("lower_order_h")) lower_h = rational_list_from_json(j["lower_order_h"], "lower_order_h");
    if (j.contains("lower_order_push")) {
        lower_push = rational_list_from_json(j["lower_order_push"], "lower_order_push");
    }
    std::optional<Rational> s_check;
    if (j.contains("s")) s_check = rational_from_json(j["s"], "s");

    return make_fibration_data(static_cast<int>(n), rational_from_json(j["v"], "v"),
                               rational_from_json(j["kl_fibre"], "kl_fibre"),
                               rational_from_json(j["ell"], "ell"),
                               rational_from_json(j["k"], "k"), std::move(lower_h),
                               std::move(lower_push), s_check);
}

FibrationData fibration_from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fibration_from_json_text(buf.str());
}

std::string fibration_schema_text() {
    return "Fibration data JSON schema:\n"
           "  {\n"
           "    \"n\": 1,                  complex fibre dimension, integer >= 1\n"
           "    \"v\": 2,                  fibre degree of L, rational > 0\n"
           "    \"kl_fibre\": 2,           K_{X/B}.L^{n-1} on a fibre, rational\n"
           "    \"ell\": 8,                L^{n+1} on the total space, rational\n"
           "    \"k\": 8,                  K_{X/B}.L^n on the total space, rational\n"
           "    \"lower_order_h\": [],     optional Hilbert coefficients, exponents n-2 down to 0\n"
           "    \"lower_order_push\": [],  optional pushforward coefficients, exponents n-1 down to 0\n"
           "    \"s\": \"-1\"                optional cross-check of -n*kl_fibre/v\n"
           "  }\n"
           "Rationals are JSON integers or strings \"p/q\"; floats are rejected.\n";
}

std::string ch_report_json(const CHReport& report) {
    std::string poly = "{";
    bool first = true;
    for (int e = 0; e <= report.combination.degree(); ++e) {
        const Rational c = report.combination.coeff(e);
        if (c.is_zero()) continue;
        if (!first) poly += ", ";
        first = false;
        poly += "\"" + std::to_string(e) + "\": \"" + c.str() + "\"";
    }
    poly += "}";

    JsonWriter w;
    w.add_raw("combination", poly);
    w.add_bool("top_vanishes", report.top_vanishes);
    w.add_rational("m2n_coefficient", report.m2n_coefficient);
    w.add_rational("alpha_degree", report.alpha_degree);
    w.add_string("nef_sign", to_string(report.nef_sign));
    return w.str();
}

}  // namespace fibcm

#include "fibcm/json_writer.hpp"

#include <cmath>
#include <cstdio>

#include "fibcm/errors.hpp"

namespace fibcm {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

std::string json_real(double value) {
    if (!std::isfinite(value)) throw DomainError("non-finite value in JSON output");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string json_array_reals(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out += ", ";
        out += json_real(values[i]);
    }
    out += "]";
    return out;
}

void JsonWriter::add_string(const std::string& key, const std::string& value) {
    items_.emplace_back(key, "\"" + json_escape(value) + "\"");
}

void JsonWriter::add_bool(const std::string& key, bool value) {
    items_.emplace_back(key, value ? "true" : "false");
}

void JsonWriter::add_int(const std::string& key, long long value) {
    items_.emplace_back(key, std::to_string(value));
}

void JsonWriter::add_real(const std::string& key, double value) {
    items_.emplace_back(key, json_real(value));
}

void JsonWriter::add_rational(const std::string& key, const Rational& value) {
    add_string(key, value.str());
}

void JsonWriter::add_raw(const std::string& key, const std::string& json) {
    items_.emplace_back(key, json);
}

std::string JsonWriter::str() const {
    std::string out = "{\n";
    for (std::size_t i = 0; i < items_.size(); ++i) {
        out += "  \"" + json_escape(items_[i].first) + "\": " + items_[i].second;
        out += i + 1 == items_.size() ? "\n" : ",\n";
    }
    out += "}\n";
    return out;
}

}  // namespace fibcm

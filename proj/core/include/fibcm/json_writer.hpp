#pragma once

#include <string>
#include <vector>

#include "fibcm/rational.hpp"

namespace fibcm {

// Insertion-ordered JSON object assembler for tool output. Input files go
// through a real JSON parser; output only needs a fixed key order and fixed
// number formatting so identical runs emit byte-identical files.
class JsonWriter {
public:
    void add_string(const std::string& key, const std::string& value);
    void add_bool(const std::string& key, bool value);
    void add_int(const std::string& key, long long value);
    // 17 significant digits; throws DomainError on non-finite values, which
    // have no JSON representation.
    void add_real(const std::string& key, double value);
    // Emitted as a string, "p" or "p/q", never as a float.
    void add_rational(const std::string& key, const Rational& value);
    // Preformatted JSON value, emitted verbatim.
    void add_raw(const std::string& key, const std::string& json);

    // Two-space-indented object with keys in insertion order, trailing
    // newline included.
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

std::string json_escape(const std::string& s);
std::string json_real(double value);
std::string json_array_reals(const std::vector<double>& values);

}  // namespace fibcm

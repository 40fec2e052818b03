#pragma once

#include <string>

#include "fibcm/torus_field.hpp"

namespace fibcm {

struct NamedField {
    std::string name;
    TorusField field;
};

// Sidecar header path for a field CSV: the CSV path with ".json" appended.
std::string sidecar_path(const std::string& csv_path);

// Writes N rows of N comma-separated values (17 significant digits),
// row-major with rows running over y, plus the sidecar {"N": ..., "field": ...}.
void write_field_csv(const std::string& csv_path, const NamedField& nf);

// Reads a field CSV and validates it against its sidecar: the grid must be
// square, a power of two, at least 8, and every value finite. The sidecar
// must contain exactly the keys "N" and "field".
NamedField read_field_csv(const std::string& csv_path);

}  // namespace fibcm

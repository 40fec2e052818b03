#pragma once

#include <string>

#include "fibcm/cm_calculus.hpp"

namespace fibcm {

// Parses fibration intersection data from JSON. Required keys: "n" (integer),
// "v", "kl_fibre", "ell", "k" (rationals). Optional keys: "lower_order_h",
// "lower_order_push" (arrays of rationals), "s" (rational, cross-checked
// against -n*kl_fibre/v). Rationals are JSON integers or "p/q" strings;
// floats and unknown keys are rejected.
FibrationData fibration_from_json_text(const std::string& text);
FibrationData fibration_from_json_file(const std::string& path);

// The schema above as help text.
std::string fibration_schema_text();

// CHReport as a JSON object; the combination polynomial is emitted as an
// object mapping exponent to coefficient in ascending exponent order.
std::string ch_report_json(const CHReport& report);

}  // namespace fibcm

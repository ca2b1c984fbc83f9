#pragma once

#include <string>
#include <string_view>

#include "arbor/treefn.hpp"

namespace arbor {

/// %.17g, with "inf"/"-inf"/"nan" spelled out.
std::string format_double(double x);

/// Decimal with an `i` suffix for the imaginary part: "2", "-1.5i", "2-1i".
std::string format_complex(Complex z);

/// Inverse of format_complex. Accepts "3", "2.5e-1", "1i", "-i", "2-1i",
/// "0.5+0.25i". Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

}  // namespace arbor

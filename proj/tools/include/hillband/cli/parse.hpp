#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hillband/chebyshev.hpp"

namespace hillband::cli {

/// Parses "a", "a+bi", "a-bi", "bi", "i", "-i" with decimal components.
/// Throws std::invalid_argument on anything else.
cplx parse_complex(std::string_view text);

/// Comma-separated list of complex numbers.
std::vector<cplx> parse_complex_list(std::string_view text);

/// Comma-separated list of reals.
std::vector<double> parse_real_list(std::string_view text);

/// "re+imi" with shortest round-trip digits; "-0" is printed as "0".
std::string format_complex(cplx z);

}  // namespace hillband::cli

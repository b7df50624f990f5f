#pragma once

#include <string>

namespace ulindley {

/// 17 significant digits; parses back to the same double.
std::string format_exact(double value);

/// Fixed point with the given number of decimals.
std::string format_fixed(double value, int decimals = 4);

}  // namespace ulindley

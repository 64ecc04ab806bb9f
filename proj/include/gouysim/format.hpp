#pragma once

#include <string>

namespace gouysim {

/// Shortest decimal that round-trips to x; "inf", "-inf" or "nan" otherwise.
std::string format_shortest(double x);
/// 17 significant digits.
std::string format_summary(double x);

}  // namespace gouysim

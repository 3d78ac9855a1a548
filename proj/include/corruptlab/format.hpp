#pragma once

#include <string>

namespace corruptlab {

/// Shortest round-trip decimal form of `x`, independent of the C locale.
/// Non-finite values print as "inf", "-inf" or "nan".
std::string format_double(double x);

}  // namespace corruptlab

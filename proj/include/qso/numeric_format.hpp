#pragma once

#include <string>

namespace qso {

// Shortest-faithful decimal form of a double: 17 significant digits, enough
// to round-trip any IEEE-754 binary64 value exactly. Used by every exported
// file format and by error messages that quote offending values.
std::string format_full(double value);

}  // namespace qso

#pragma once

namespace qso {

// Shared numeric policy. All validation in the library uses these constants
// so the accepted input set is identical everywhere.

// A probability vector or matrix row must sum to 1 within this absolute slack.
inline constexpr double kSumTolerance = 1e-12;

// Coordinates in (-kNegativeClamp, 0) are treated as rounding debris and
// clamped to exactly 0; anything at or below -kNegativeClamp is an error.
inline constexpr double kNegativeClamp = 1e-15;

}  // namespace qso

#pragma once

namespace licnet::tol {

// User-supplied distributions and channels.
inline constexpr double kInput = 1e-9;
// Objects built internally from already validated inputs.
inline constexpr double kInternal = 1e-12;
// Structural inequalities between grid entries.
inline constexpr double kGrid = 1e-8;
// Squared singular values below this are rounding noise and reported as 0.
inline constexpr double kNoiseFloor = 1e-24;

}  // namespace licnet::tol

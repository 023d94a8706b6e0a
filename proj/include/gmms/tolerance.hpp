#pragma once

namespace gmms {

// Numerical budgets shared by every constructor and check.
//
// trace_tail: admissible probability mass lost above the Fock cutoff. Every
//   trace deficit in the toolkit is attributable to this truncation and to
//   nothing else.
// psd_floor: eigenvalues in (-psd_floor, 0) are rounding noise and get
//   clamped to zero; anything below -psd_floor is a hard integrity error.
// grid_mass: tolerance on the integral of a Husimi grid over its extent.
struct ToleranceProfile {
    double trace_tail = 1e-10;
    double psd_floor = 1e-10;
    double grid_mass = 1e-3;
};

// Off-diagonal magnitudes below this are treated as exact zeros when
// classifying an operator as diagonal (entries of unit-trace operators are
// O(1), so an absolute threshold is meaningful).
inline constexpr double kDiagonalThreshold = 1e-14;

} // namespace gmms

#pragma once

#include <vector>

#include "gmms/fock.hpp"
#include "gmms/tolerance.hpp"

namespace gmms {

// Unitary on the ancilla mode B; constructor verifies U U^dag = 1 entrywise.
class AncillaUnitary {
public:
    AncillaUnitary(FockCutoff cutoff, std::vector<cplx> entries, double tol = 1e-12);

    static AncillaUnitary identity(FockCutoff cutoff);
    // diag(phases), each phase of unit modulus.
    static AncillaUnitary diagonal_phases(FockCutoff cutoff, std::span<const cplx> phases);

    FockCutoff cutoff() const { return cutoff_; }
    int dim() const { return cutoff_.dim(); }
    const cplx& operator()(int m, int n) const { return entries_[static_cast<std::size_t>(m) * dim() + n]; }

private:
    FockCutoff cutoff_;
    std::vector<cplx> entries_;
};

// General two-mode pure state psi(m, n) <-> |m>_A |n>_B, row-major in m.
struct TwoModePureState {
    FockCutoff cutoff;
    std::vector<cplx> amplitudes;

    double norm_sq() const;
};

// The g-purification map: diagonal rho with weights p_n goes to the Schmidt
// state with coefficients sqrt(p_n) (non-negative real branch; all other
// purifications are reachable with apply_ancilla_unitary). Requires the
// diagonal flag; rejects non-diagonal operators rather than silently
// eigendecomposing them.
SchmidtPureState g_purify(const FockDensityOperator& rho, const ToleranceProfile& tol = {});

// Two-mode squeezed vacuum: coefficients sqrt(1-lambda^2)(-lambda)^n with
// lambda = tanh(zeta). The alternating sign is kept; it is the diagonal-phase
// ancilla freedom away from g_purify(thermal).
SchmidtPureState tmsv(double zeta, FockCutoff cutoff, const ToleranceProfile& tol = {});

TwoModePureState to_two_mode(const SchmidtPureState& state);

// (1 x U) |psi>; never changes the reduced state on A.
TwoModePureState apply_ancilla_unitary(const TwoModePureState& state, const AncillaUnitary& u);
TwoModePureState apply_ancilla_unitary(const SchmidtPureState& state, const AncillaUnitary& u);

// rho_A(m, m') = sum_n psi(m, n) conj(psi(m', n)).
FockDensityOperator reduced_state_A(const TwoModePureState& state);

struct PurificationReport {
    double max_abs_deviation = 0.0;
    double hs_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Compares Tr_B |state><state| against rho entrywise and in HS norm.
PurificationReport verify_purification(const TwoModePureState& state, const FockDensityOperator& rho,
                                       double tol);
PurificationReport verify_purification(const SchmidtPureState& state, const FockDensityOperator& rho,
                                       double tol);

} // namespace gmms

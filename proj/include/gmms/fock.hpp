#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "gmms/tolerance.hpp"

namespace gmms {

using cplx = std::complex<double>;

// Highest retained photon number; the space has dimension n_max + 1.
struct FockCutoff {
    int n_max = 0;
    int dim() const { return n_max + 1; }
    bool operator==(const FockCutoff&) const = default;
};

// Single-mode ket in the number basis.
struct FockPureVector {
    FockCutoff cutoff;
    std::vector<cplx> amplitudes;

    double norm_sq() const;
};

// Two-mode pure state of Schmidt form  sum_n c_n |n>_A |n>_B.
struct SchmidtPureState {
    FockCutoff cutoff;
    std::vector<cplx> coefficients;

    double norm_sq() const;
};

// Hermitian, near-unit-trace operator on the truncated Fock space. Entries
// are row-major; Hermiticity holds exactly by construction, the diagonal is
// real. diagonal() below is the O(N) fast-path view for diagonal states.
class FockDensityOperator {
public:
    static FockDensityOperator zero(FockCutoff cutoff);

    // Diagonal operator from real weights. Weights below -psd_floor are an
    // integrity error; values in (-psd_floor, 0) are clamped to zero.
    static FockDensityOperator from_diagonal(FockCutoff cutoff, std::span<const double> weights,
                                             const ToleranceProfile& tol = {});

    // Dense Hermitian operator. Entries must satisfy m(i,j) = conj(m(j,i)) to
    // within herm_tol; the stored matrix is exactly symmetrized. The diagonal
    // flag is measured against kDiagonalThreshold.
    static FockDensityOperator from_matrix(FockCutoff cutoff, std::vector<cplx> entries,
                                           double herm_tol = 1e-12);

    FockCutoff cutoff() const { return cutoff_; }
    int dim() const { return cutoff_.dim(); }
    bool is_diagonal() const { return diagonal_; }

    const cplx& operator()(int m, int n) const { return entries_[static_cast<std::size_t>(m) * dim() + n]; }
    std::span<const cplx> entries() const { return entries_; }

    double trace() const;
    std::vector<double> diagonal() const;

    // Hilbert-Schmidt mass of the off-diagonal part.
    double offdiagonal_hs_mass() const;

    // Full invariant check: trace window, PSD within tol.psd_floor.
    void validate(const ToleranceProfile& tol = {}) const;

private:
    FockDensityOperator(FockCutoff cutoff, std::vector<cplx> entries, bool diagonal)
        : cutoff_(cutoff), entries_(std::move(entries)), diagonal_(diagonal) {}

    FockCutoff cutoff_;
    std::vector<cplx> entries_;
    bool diagonal_ = false;
};

// Tr_B |s><s| for a Schmidt-form state: diagonal operator with weights |c_n|^2.
FockDensityOperator partial_trace_B(const SchmidtPureState& state);

// |ket><ket| (rank one, trace = |ket|^2).
FockDensityOperator outer_product(const FockPureVector& ket);

// acc + w * op with w >= 0; Hermiticity is preserved exactly.
FockDensityOperator add_scaled(const FockDensityOperator& acc, const FockDensityOperator& op, double w);

// Diagonal part of rho plus the Hilbert-Schmidt mass that was discarded.
// This is the explicit (reported) step required before purifying a
// quadrature-built operator that carries off-diagonal residue.
std::pair<FockDensityOperator, double> truncate_offdiagonal(const FockDensityOperator& rho,
                                                            const ToleranceProfile& tol = {});

// Ascending eigenvalues of the Hermitian operator.
std::vector<double> hermitian_eigenvalues(const FockDensityOperator& rho);

} // namespace gmms

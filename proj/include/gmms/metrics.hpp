#pragma once

#include <span>
#include <vector>

#include "gmms/fock.hpp"
#include "gmms/states.hpp"
#include "gmms/tolerance.hpp"

namespace gmms {

struct StateReport {
    double trace = 0.0;
    double entropy_nats = 0.0;
    double purity = 0.0;
    double mean_photon = 0.0;
    double offdiag_hs_mass = 0.0;
};

// von Neumann entropy -sum lambda ln lambda in nats. Diagonal states read
// their spectrum directly; dense states are eigendecomposed. Eigenvalues in
// (-psd_floor, 0) count as zero, below -psd_floor raise IntegrityError.
double entropy(const FockDensityOperator& rho, const ToleranceProfile& tol = {});

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

// Hilbert-Schmidt (Frobenius) distance sqrt(sum |a-b|^2).
double hs_distance(const FockDensityOperator& a, const FockDensityOperator& b);

// Tr(rho^2) = sum |entries|^2 for Hermitian rho.
double purity(const FockDensityOperator& rho);

// Tr(rho n_hat) = sum_n n rho(n,n).
double mean_photon(const FockDensityOperator& rho);

StateReport make_report(const FockDensityOperator& rho, const ToleranceProfile& tol = {});

struct ScanRow {
    double parameter = 0.0;
    double entropy_nats = 0.0;
    double trace = 0.0;
    double mean_photon = 0.0;
};

// Sweeps the family's leading parameter (nbar for thermal, b otherwise) over
// the grid at a shared cutoff adequate for every point; rows follow grid order.
std::vector<ScanRow> entropy_scan(const GmmsSpec& family, std::span<const double> grid,
                                  const ToleranceProfile& tol = {}, const QuadratureSpec& quad = {});

} // namespace gmms

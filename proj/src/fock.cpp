#include "gmms/fock.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gmms/errors.hpp"
#include "gmms/kernels.hpp"

namespace gmms {

namespace {

bool measure_diagonal(const std::vector<cplx>& m, int dim) {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (i != j && std::abs(m[static_cast<std::size_t>(i) * dim + j]) > kDiagonalThreshold)
                return false;
    return true;
}

} // namespace

double FockPureVector::norm_sq() const {
    return kernels::sum_sq(reinterpret_cast<const double*>(amplitudes.data()), 2 * amplitudes.size());
}

double SchmidtPureState::norm_sq() const {
    return kernels::sum_sq(reinterpret_cast<const double*>(coefficients.data()), 2 * coefficients.size());
}

FockDensityOperator FockDensityOperator::zero(FockCutoff cutoff) {
    return {cutoff, std::vector<cplx>(static_cast<std::size_t>(cutoff.dim()) * cutoff.dim()), true};
}

FockDensityOperator FockDensityOperator::from_diagonal(FockCutoff cutoff, std::span<const double> weights,
                                                       const ToleranceProfile& tol) {
    const int d = cutoff.dim();
    if (static_cast<int>(weights.size()) != d)
        throw DimensionError("from_diagonal: weight count does not match cutoff dimension");
    std::vector<cplx> m(static_cast<std::size_t>(d) * d);
    for (int n = 0; n < d; ++n) {
        double w = weights[n];
        if (w < -tol.psd_floor)
            throw IntegrityError("from_diagonal: weight below -psd_floor at n=" + std::to_string(n));
        if (w < 0.0) w = 0.0;
        m[static_cast<std::size_t>(n) * d + n] = w;
    }
    return {cutoff, std::move(m), true};
}

FockDensityOperator FockDensityOperator::from_matrix(FockCutoff cutoff, std::vector<cplx> entries,
                                                     double herm_tol) {
    const int d = cutoff.dim();
    if (entries.size() != static_cast<std::size_t>(d) * d)
        throw DimensionError("from_matrix: entry count does not match cutoff dimension");
    for (int i = 0; i < d; ++i) {
        cplx& diag = entries[static_cast<std::size_t>(i) * d + i];
        if (std::abs(diag.imag()) > herm_tol)
            throw IntegrityError("from_matrix: complex diagonal entry");
        diag = cplx(diag.real(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            cplx& upper = entries[static_cast<std::size_t>(i) * d + j];
            cplx& lower = entries[static_cast<std::size_t>(j) * d + i];
            if (std::abs(upper - std::conj(lower)) > herm_tol)
                throw IntegrityError("from_matrix: entries are not Hermitian within tolerance");
            lower = std::conj(upper);
        }
    }
    const bool diag = measure_diagonal(entries, d);
    return {cutoff, std::move(entries), diag};
}

double FockDensityOperator::trace() const {
    double t = 0.0;
    const int d = dim();
    for (int n = 0; n < d; ++n) t += entries_[static_cast<std::size_t>(n) * d + n].real();
    return t;
}

std::vector<double> FockDensityOperator::diagonal() const {
    const int d = dim();
    std::vector<double> out(d);
    for (int n = 0; n < d; ++n) out[n] = entries_[static_cast<std::size_t>(n) * d + n].real();
    return out;
}

double FockDensityOperator::offdiagonal_hs_mass() const {
    const int d = dim();
    double acc = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j) acc += std::norm(entries_[static_cast<std::size_t>(i) * d + j]);
    return std::sqrt(acc);
}

void FockDensityOperator::validate(const ToleranceProfile& tol) const {
    const double t = trace();
    if (t > 1.0 + 1e-12 || t < 1.0 - tol.trace_tail - 1e-12)
        throw IntegrityError("density operator trace " + std::to_string(t) + " outside truncation window");
    const auto eigs = hermitian_eigenvalues(*this);
    if (!eigs.empty() && eigs.front() < -tol.psd_floor)
        throw IntegrityError("density operator eigenvalue " + std::to_string(eigs.front()) +
                             " below -psd_floor");
}

FockDensityOperator partial_trace_B(const SchmidtPureState& state) {
    std::vector<double> weights(state.coefficients.size());
    for (std::size_t n = 0; n < weights.size(); ++n) weights[n] = std::norm(state.coefficients[n]);
    return FockDensityOperator::from_diagonal(state.cutoff, weights);
}

FockDensityOperator outer_product(const FockPureVector& ket) {
    const int d = ket.cutoff.dim();
    if (static_cast<int>(ket.amplitudes.size()) != d)
        throw DimensionError("outer_product: amplitude count does not match cutoff");
    std::vector<cplx> m(static_cast<std::size_t>(d) * d);
    kernels::rank1_accumulate(m.data(), ket.amplitudes.data(), 1.0, d);
    return FockDensityOperator::from_matrix(ket.cutoff, std::move(m));
}

FockDensityOperator add_scaled(const FockDensityOperator& acc, const FockDensityOperator& op, double w) {
    if (!(acc.cutoff() == op.cutoff()))
        throw DimensionError("add_scaled: cutoff mismatch");
    if (w < 0.0) throw DomainError("add_scaled: weight must be non-negative");
    std::vector<cplx> m(acc.entries().begin(), acc.entries().end());
    kernels::axpy(reinterpret_cast<double*>(m.data()),
                  reinterpret_cast<const double*>(op.entries().data()), w, 2 * m.size());
    return FockDensityOperator::from_matrix(acc.cutoff(), std::move(m));
}

std::pair<FockDensityOperator, double> truncate_offdiagonal(const FockDensityOperator& rho,
                                                            const ToleranceProfile& tol) {
    const double cost = rho.offdiagonal_hs_mass();
    return {FockDensityOperator::from_diagonal(rho.cutoff(), rho.diagonal(), tol), cost};
}

std::vector<double> hermitian_eigenvalues(const FockDensityOperator& rho) {
    const int d = rho.dim();
    Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        rho.entries().data(), d, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(d);
    for (int i = 0; i < d; ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

} // namespace gmms

#include "gmms/purify.hpp"

#include <cmath>

#include "gmms/errors.hpp"
#include "gmms/kernels.hpp"
#include "gmms/metrics.hpp"

namespace gmms {

AncillaUnitary::AncillaUnitary(FockCutoff cutoff, std::vector<cplx> entries, double tol)
    : cutoff_(cutoff), entries_(std::move(entries)) {
    const int d = cutoff_.dim();
    if (entries_.size() != static_cast<std::size_t>(d) * d)
        throw DimensionError("AncillaUnitary: entry count does not match cutoff");
    // U U^dag = 1 entrywise: row i of U dotted with conj(row j).
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const cplx v = kernels::dot_conj(entries_.data() + static_cast<std::size_t>(j) * d,
                                             entries_.data() + static_cast<std::size_t>(i) * d, d);
            const cplx want = (i == j) ? cplx{1.0, 0.0} : cplx{};
            if (std::abs(v - want) > tol)
                throw PreconditionError("AncillaUnitary: U U^dag deviates from identity at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
}

AncillaUnitary AncillaUnitary::identity(FockCutoff cutoff) {
    const int d = cutoff.dim();
    std::vector<cplx> u(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i) * d + i] = 1.0;
    return {cutoff, std::move(u)};
}

AncillaUnitary AncillaUnitary::diagonal_phases(FockCutoff cutoff, std::span<const cplx> phases) {
    const int d = cutoff.dim();
    if (static_cast<int>(phases.size()) != d)
        throw DimensionError("diagonal_phases: phase count does not match cutoff");
    std::vector<cplx> u(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i) * d + i] = phases[i];
    return {cutoff, std::move(u)};
}

double TwoModePureState::norm_sq() const {
    return kernels::sum_sq(reinterpret_cast<const double*>(amplitudes.data()), 2 * amplitudes.size());
}

SchmidtPureState g_purify(const FockDensityOperator& rho, const ToleranceProfile& tol) {
    if (!rho.is_diagonal())
        throw PreconditionError(
            "g_purify: operator is not Fock-diagonal; truncate_offdiagonal (or eigendecompose) first");
    const std::vector<double> p = rho.diagonal();
    std::vector<cplx> coeff(p.size());
    for (std::size_t n = 0; n < p.size(); ++n) {
        double w = p[n];
        if (w < -tol.psd_floor)
            throw IntegrityError("g_purify: weight " + std::to_string(w) + " below -psd_floor at n=" +
                                 std::to_string(n));
        if (w < 0.0) w = 0.0;
        coeff[n] = std::sqrt(w);  // non-negative real branch
    }
    return {rho.cutoff(), std::move(coeff)};
}

SchmidtPureState tmsv(double zeta, FockCutoff cutoff, const ToleranceProfile& tol) {
    if (zeta < 0.0) throw DomainError("tmsv: zeta must be non-negative");
    const int d = cutoff.dim();
    std::vector<cplx> coeff(d);
    const double lambda = std::tanh(zeta);
    if (lambda > 0.0) {
        const double tail = std::exp(2.0 * (cutoff.n_max + 1.0) * std::log(lambda));
        if (tail >= tol.trace_tail) {
            const int needed =
                static_cast<int>(std::ceil(std::log(tol.trace_tail) / (2.0 * std::log(lambda)))) + 1;
            throw TruncationError("tmsv: zeta = " + std::to_string(zeta) + " needs n_max >= " +
                                      std::to_string(needed),
                                  needed);
        }
    }
    const double norm = std::sqrt(1.0 - lambda * lambda);
    double term = norm;
    for (int n = 0; n < d; ++n) {
        coeff[n] = term;
        term *= -lambda;
    }
    return {cutoff, std::move(coeff)};
}

TwoModePureState to_two_mode(const SchmidtPureState& state) {
    const int d = state.cutoff.dim();
    std::vector<cplx> psi(static_cast<std::size_t>(d) * d);
    for (int n = 0; n < d; ++n) psi[static_cast<std::size_t>(n) * d + n] = state.coefficients[n];
    return {state.cutoff, std::move(psi)};
}

TwoModePureState apply_ancilla_unitary(const TwoModePureState& state, const AncillaUnitary& u) {
    if (!(state.cutoff == u.cutoff()))
        throw DimensionError("apply_ancilla_unitary: cutoff mismatch");
    const int d = state.cutoff.dim();
    std::vector<cplx> out(static_cast<std::size_t>(d) * d);
    // psi'(m, n) = sum_k U(n, k) psi(m, k): each A-row transforms by U.
    for (int m = 0; m < d; ++m) {
        const cplx* row = state.amplitudes.data() + static_cast<std::size_t>(m) * d;
        for (int n = 0; n < d; ++n) {
            cplx acc{};
            for (int k = 0; k < d; ++k) acc += u(n, k) * row[k];
            out[static_cast<std::size_t>(m) * d + n] = acc;
        }
    }
    return {state.cutoff, std::move(out)};
}

TwoModePureState apply_ancilla_unitary(const SchmidtPureState& state, const AncillaUnitary& u) {
    return apply_ancilla_unitary(to_two_mode(state), u);
}

FockDensityOperator reduced_state_A(const TwoModePureState& state) {
    const int d = state.cutoff.dim();
    std::vector<cplx> rho(static_cast<std::size_t>(d) * d);
    for (int m = 0; m < d; ++m) {
        for (int mp = 0; mp <= m; ++mp) {
            const cplx v = kernels::dot_conj(state.amplitudes.data() + static_cast<std::size_t>(mp) * d,
                                             state.amplitudes.data() + static_cast<std::size_t>(m) * d, d);
            rho[static_cast<std::size_t>(m) * d + mp] = v;
            rho[static_cast<std::size_t>(mp) * d + m] = std::conj(v);
        }
    }
    return FockDensityOperator::from_matrix(state.cutoff, std::move(rho));
}

PurificationReport verify_purification(const TwoModePureState& state, const FockDensityOperator& rho,
                                       double tol) {
    if (!(state.cutoff == rho.cutoff()))
        throw DimensionError("verify_purification: cutoff mismatch");
    const FockDensityOperator reduced = reduced_state_A(state);
    double max_dev = 0.0;
    const int d = rho.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) max_dev = std::max(max_dev, std::abs(reduced(i, j) - rho(i, j)));
    PurificationReport report;
    report.max_abs_deviation = max_dev;
    report.hs_deviation = hs_distance(reduced, rho);
    report.tolerance = tol;
    report.pass = max_dev <= tol;
    return report;
}

PurificationReport verify_purification(const SchmidtPureState& state, const FockDensityOperator& rho,
                                       double tol) {
    return verify_purification(to_two_mode(state), rho, tol);
}

} // namespace gmms

#include "gmms/phasespace.hpp"

#include <cmath>
#include <numbers>

#include "gmms/errors.hpp"
#include "gmms/kernels.hpp"
#include "gmms/special.hpp"
#include "gmms/states.hpp"

namespace gmms {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PhaseSpaceGrid::re_at(int i) const {
    if (resolution == 1) return 0.5 * (re_min + re_max);
    return re_min + (re_max - re_min) * i / (resolution - 1);
}

double PhaseSpaceGrid::im_at(int j) const {
    if (resolution == 1) return 0.5 * (im_min + im_max);
    return im_min + (im_max - im_min) * j / (resolution - 1);
}

double PhaseSpaceGrid::integral() const {
    if (resolution < 2) return 0.0;
    const double hre = (re_max - re_min) / (resolution - 1);
    const double him = (im_max - im_min) / (resolution - 1);
    double acc = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double wi = (i == 0 || i == resolution - 1) ? 0.5 : 1.0;
        for (int j = 0; j < resolution; ++j) {
            const double wj = (j == 0 || j == resolution - 1) ? 0.5 : 1.0;
            acc += wi * wj * at(i, j);
        }
    }
    return acc * hre * him;
}

double husimi_point(const FockDensityOperator& rho, cplx beta, const ToleranceProfile& tol) {
    const double x = std::norm(beta);
    if (x > 0.0 && regularized_lower_gamma(rho.cutoff().n_max + 1, x) >= tol.trace_tail)
        throw TruncationError("husimi_point: |beta|^2 = " + std::to_string(x) + " needs n_max >= " +
                                  std::to_string(poisson_tail_cutoff(x, tol.trace_tail)),
                              poisson_tail_cutoff(x, tol.trace_tail));

    if (rho.is_diagonal()) {
        // (1/pi) sum_n p_n e^{-x} x^n / n!
        const std::vector<double> p = rho.diagonal();
        double acc = 0.0;
        if (x == 0.0) {
            acc = p[0];
        } else {
            for (std::size_t n = 0; n < p.size(); ++n)
                acc += p[n] * std::exp(-x + static_cast<double>(n) * std::log(x) - std::lgamma(n + 1.0));
        }
        return acc / kPi;
    }

    const FockPureVector probe = coherent_ket(beta, rho.cutoff(), tol);
    const int d = rho.dim();
    std::vector<cplx> y(d);
    kernels::matvec(rho.entries().data(), probe.amplitudes.data(), y.data(), d);
    return kernels::dot_conj(probe.amplitudes.data(), y.data(), d).real() / kPi;
}

double wigner_point(const FockDensityOperator& rho, cplx alpha) {
    if (!rho.is_diagonal())
        throw PreconditionError("wigner_point: implemented for Fock-diagonal operators only");
    const double x = 4.0 * std::norm(alpha);
    const std::vector<double> p = rho.diagonal();
    double acc = 0.0;
    double sign = 1.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        acc += sign * p[n] * laguerre(static_cast<int>(n), x);
        sign = -sign;
    }
    return (2.0 / kPi) * std::exp(-0.5 * x) * acc;
}

PhaseSpaceGrid husimi_grid(const FockDensityOperator& rho, double re_min, double re_max, double im_min,
                           double im_max, int resolution, const ToleranceProfile& tol) {
    if (resolution < 1) throw DomainError("husimi_grid: resolution must be >= 1");
    if (!(re_max >= re_min) || !(im_max >= im_min))
        throw DomainError("husimi_grid: empty extent");
    PhaseSpaceGrid grid{re_min, re_max, im_min, im_max, resolution, {}};
    grid.values.resize(static_cast<std::size_t>(resolution) * resolution);
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            grid.at(i, j) = husimi_point(rho, cplx(grid.re_at(i), grid.im_at(j)), tol);
    return grid;
}

PhaseSpaceGrid husimi_grid(const FockDensityOperator& rho, double extent, int resolution,
                           const ToleranceProfile& tol) {
    return husimi_grid(rho, -extent, extent, -extent, extent, resolution, tol);
}

double smoothing_check(const FockDensityOperator& rho, cplx beta, const QuadratureSpec& quad) {
    if (!rho.is_diagonal())
        throw PreconditionError("smoothing_check: implemented for Fock-diagonal operators only");
    const double radius = std::abs(beta) + 6.0;
    auto [r, wr] = gauss_legendre(quad.radial_order, 0.0, radius);
    const double dtheta = 2.0 * kPi / quad.angular_order;

    double conv = 0.0;
    for (int i = 0; i < quad.radial_order; ++i) {
        double ring = 0.0;
        for (int j = 0; j < quad.angular_order; ++j) {
            const cplx alpha = std::polar(r[i], dtheta * j);
            ring += wigner_point(rho, alpha) * std::exp(-2.0 * std::norm(alpha - beta));
        }
        conv += wr[i] * r[i] * dtheta * ring;
    }
    conv *= 2.0 / kPi;

    // Probe tails above the cutoff carry no rho weight; skip the probe check.
    ToleranceProfile lax;
    lax.trace_tail = 1.0;
    return std::abs(husimi_point(rho, beta, lax) - conv);
}

double wigner_negativity_volume(const FockDensityOperator& rho, double radius,
                                const QuadratureSpec& quad) {
    if (!(radius > 0.0)) throw DomainError("wigner_negativity_volume: radius must be positive");
    const auto w_at = [&](double r) { return wigner_point(rho, cplx(r, 0.0)); };

    // W of a Fock-diagonal state is radial; split at the sign changes so each
    // lobe is smooth for the radial rule (max(-W, 0) has kinks at the roots).
    const int scan = std::max(1024, 16 * quad.radial_order);
    std::vector<double> cuts{0.0};
    double prev_r = 0.0, prev_w = w_at(0.0);
    for (int i = 1; i <= scan; ++i) {
        const double cur_r = radius * i / scan;
        const double cur_w = w_at(cur_r);
        if ((prev_w < 0.0) != (cur_w < 0.0)) {
            double lo = prev_r, hi = cur_r, flo = prev_w;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = w_at(mid);
                if ((flo < 0.0) == (fmid < 0.0)) {
                    lo = mid;
                    flo = fmid;
                } else {
                    hi = mid;
                }
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        prev_r = cur_r;
        prev_w = cur_w;
    }
    cuts.push_back(radius);

    double acc = 0.0;
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        if (w_at(0.5 * (cuts[seg] + cuts[seg + 1])) >= 0.0) continue;
        auto [r, wr] = gauss_legendre(quad.radial_order, cuts[seg], cuts[seg + 1]);
        for (int i = 0; i < quad.radial_order; ++i) acc -= wr[i] * r[i] * w_at(r[i]);
    }
    return 2.0 * kPi * acc;
}

} // namespace gmms

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "gmms/fock.hpp"
#include "gmms/quadrature.hpp"
#include "gmms/tolerance.hpp"

namespace gmms {

// Tagged description of a candidate state. Canonical textual form:
//   thermal:nbar=1.0
//   cvmms:b=2.0
//   squeezed:b=2.0,s=0.3,phi=0.7854
//   riemann:b=1.0,delta=0.1
struct GmmsSpec {
    enum class Kind { thermal, cvmms, squeezed, riemann };

    Kind kind = Kind::thermal;
    double nbar = 0.0;   // thermal
    double b = 0.0;      // cvmms / squeezed / riemann
    double s = 0.0;      // squeezed: zeta = s e^{i phi}
    double phi = 0.0;
    double delta = 0.0;  // riemann grid spacing

    static GmmsSpec thermal(double nbar);
    static GmmsSpec cvmms(double b);
    static GmmsSpec squeezed(double b, double s, double phi);
    static GmmsSpec riemann(double b, double delta);

    static GmmsSpec parse(std::string_view text);
    std::string to_string() const;

    const char* kind_name() const;
};

// |alpha> = e^{-|alpha|^2/2} sum_n alpha^n/sqrt(n!) |n>, log-domain magnitudes.
// Throws TruncationError (with the n_max that would suffice) when the Poisson
// tail above the cutoff exceeds tol.trace_tail.
FockPureVector coherent_ket(cplx alpha, FockCutoff cutoff, const ToleranceProfile& tol = {});

// Squeezed coherent ket S(zeta)D(alpha)|0> with zeta = s e^{i phi}, via the
// complex-Hermite expansion; s = 0 dispatches to coherent_ket (the nu = 0
// limit is exact). Throws TruncationError when the retained norm falls short.
FockPureVector sc_ket(cplx alpha, double s, double phi, FockCutoff cutoff,
                      const ToleranceProfile& tol = {});

// rho_th(nbar) = sum_n nbar^n/(nbar+1)^{n+1} |n><n|.
FockDensityOperator thermal_state(double nbar, FockCutoff cutoff, const ToleranceProfile& tol = {});

// CVMMS: diagonal weights P(n+1, b^2)/b^2, the equiprobable disk mixture of
// coherent projectors in closed form.
FockDensityOperator cvmms_state(double b, FockCutoff cutoff, const ToleranceProfile& tol = {});

// (1/pi b^2) Int_{|alpha|<=b} |alpha,zeta><alpha,zeta| d^2alpha by polar
// quadrature; node partials are combined by a pairwise tree reduction so the
// result is bit-stable regardless of evaluation order. Off-diagonal content
// is whatever the integral produces; nothing is assumed diagonal. Renormalizes
// to exactly unit trace only when renormalize is set.
FockDensityOperator quadrature_gmms(double b, double s, double phi, FockCutoff cutoff,
                                    const QuadratureSpec& quad = {}, const ToleranceProfile& tol = {},
                                    bool renormalize = false);

// Square-lattice Riemann sum over the disk (cell centers at integer multiples
// of delta, membership |alpha| <= b), normalized to exactly unit trace.
FockDensityOperator riemann_gmms(double b, double delta, FockCutoff cutoff,
                                 const ToleranceProfile& tol = {});

// Cutoff policy: smallest n_max (plus safety margin for quadrature families)
// whose analytically known tail mass is below tol.trace_tail.
int auto_cutoff(const GmmsSpec& spec, const ToleranceProfile& tol = {});

FockDensityOperator make_state(const GmmsSpec& spec, FockCutoff cutoff,
                               const ToleranceProfile& tol = {}, const QuadratureSpec& quad = {});

// Derived kappa_n report for a squeezed candidate: the measured diagonal
// scaled by b^2 e^{K b^2} with K = 1 - tanh(s) cos(phi) (theta -> 0 reading).
std::vector<double> squeezed_kappa(const FockDensityOperator& rho, double b, double s, double phi);

double squeezed_k_constant(double s, double phi);

} // namespace gmms

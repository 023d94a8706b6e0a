#pragma once

#include <complex>
#include <vector>

#include "gmms/fock.hpp"
#include "gmms/quadrature.hpp"
#include "gmms/tolerance.hpp"

namespace gmms {

// Rectangular grid of phase-space points with one real value per point.
// Storage is row-major with the Re axis outer and the Im axis inner; axis
// coordinates are uniform and include the extent endpoints (resolution 1
// degenerates to the midpoint).
struct PhaseSpaceGrid {
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;
    int resolution = 1;
    std::vector<double> values;

    double re_at(int i) const;
    double im_at(int j) const;
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * resolution + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * resolution + j]; }

    // 2D trapezoid over the extent (the value of interest is the total Q mass).
    double integral() const;
};

// Husimi Q(beta) = (1/pi) <beta|rho|beta>. Diagonal states use the O(N)
// Poisson-weight path, general states the quadratic form. The cutoff must
// accommodate a coherent probe at beta (TruncationError otherwise).
double husimi_point(const FockDensityOperator& rho, cplx beta, const ToleranceProfile& tol = {});

// Wigner function of a Fock-diagonal state:
// (2/pi) sum_n p_n (-1)^n e^{-2|alpha|^2} L_n(4|alpha|^2).
double wigner_point(const FockDensityOperator& rho, cplx alpha);

PhaseSpaceGrid husimi_grid(const FockDensityOperator& rho, double re_min, double re_max,
                           double im_min, double im_max, int resolution,
                           const ToleranceProfile& tol = {});

// Square extent [-extent, extent]^2.
PhaseSpaceGrid husimi_grid(const FockDensityOperator& rho, double extent, int resolution,
                           const ToleranceProfile& tol = {});

// | Q(beta) - (2/pi) Int W(alpha) e^{-2|alpha-beta|^2} d^2alpha | with the
// integral taken over |alpha| <= |beta| + 6 by polar quadrature. The returned
// deviation is the check; nothing is asserted here.
double smoothing_check(const FockDensityOperator& rho, cplx beta, const QuadratureSpec& quad = {});

// Diagnostic only: Int max(-W, 0) d^2alpha over |alpha| <= radius, a crude
// non-smoothness witness for Fock-diagonal states.
double wigner_negativity_volume(const FockDensityOperator& rho, double radius,
                                const QuadratureSpec& quad = {});

} // namespace gmms

#pragma once

#include <utility>
#include <vector>

namespace gmms {

// Discretization of the disk integral: Gauss-Legendre nodes in the radius,
// uniform nodes in the angle (the integrand is smooth and 2pi-periodic).
struct QuadratureSpec {
    int radial_order = 64;
    int angular_order = 128;

    QuadratureSpec doubled() const { return {2 * radial_order, 2 * angular_order}; }
};

// Gauss-Legendre nodes and weights on [a, b], Newton iteration from the
// Chebyshev initial guess. Deterministic for fixed argument.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order, double a, double b);

} // namespace gmms

#include "gmms/quadrature.hpp"

#include <cmath>

#include "gmms/errors.hpp"

namespace gmms {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order, double a, double b) {
    if (order < 1) throw DomainError("gauss_legendre: order must be >= 1");
    const int n = order;
    std::vector<double> x(n), w(n);

    // Roots of P_n by Newton iteration; symmetric, so only half are solved.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double xm = 0.5 * (b + a);
        const double xl = 0.5 * (b - a);
        x[i] = xm - xl * z;
        x[n - 1 - i] = xm + xl * z;
        w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {std::move(x), std::move(w)};
}

} // namespace gmms

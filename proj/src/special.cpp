#include "gmms/special.hpp"

#include <cmath>

#include "gmms/errors.hpp"

namespace gmms {

double LogWeight::weight() const { return std::exp(value); }

LogWeight log_poisson_pmf(int k, double x) {
    if (k < 0) throw DomainError("log_poisson_pmf: k must be non-negative");
    if (!(x > 0.0)) throw DomainError("log_poisson_pmf: x must be positive");
    return {static_cast<double>(k) * std::log(x) - x - std::lgamma(static_cast<double>(k) + 1.0)};
}

double regularized_lower_gamma(int n_plus_1, double x) {
    if (n_plus_1 < 1) throw DomainError("regularized_lower_gamma: n+1 must be >= 1");
    if (x < 0.0) throw DomainError("regularized_lower_gamma: x must be non-negative");
    if (x == 0.0) return 0.0;

    // P(n+1, x) = 1 - sum_{k=0}^{n} x^k e^{-x} / k!  -- the Poisson survival
    // form of the identity gamma(n+1, x)/n! = 1 - sum_k ..., summed in the
    // linear domain with log-domain terms.
    double cdf = 0.0;
    for (int k = 0; k <= n_plus_1 - 1; ++k) cdf += log_poisson_pmf(k, x).weight();
    double p = 1.0 - cdf;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

std::complex<double> hermite_complex(int n, std::complex<double> z) {
    if (n < 0) throw DomainError("hermite_complex: n must be non-negative");
    std::complex<double> prev{1.0, 0.0};
    if (n == 0) return prev;
    std::complex<double> cur = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        std::complex<double> next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
        if (std::abs(next.real()) > 1e300 || std::abs(next.imag()) > 1e300)
            throw IntegrityError("hermite_complex: recurrence magnitude exceeds 1e300");
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre(int n, double x) {
    if (n < 0) throw DomainError("laguerre: n must be non-negative");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

int poisson_tail_cutoff(double x, double tau) {
    if (x < 0.0) throw DomainError("poisson_tail_cutoff: x must be non-negative");
    if (x == 0.0) return 0;
    // Start near the 10-sigma point and walk to the first admissible cutoff.
    int n = static_cast<int>(x + 10.0 * std::sqrt(x)) + 5;
    while (n > 0 && regularized_lower_gamma(n, x) < tau) --n;
    while (regularized_lower_gamma(n + 1, x) >= tau) ++n;
    return n;
}

} // namespace gmms

#pragma once

#include <complex>

namespace gmms {

// Natural-log representation of a positive weight; keeps b^{2k}/k! e^{-b^2}
// style summands finite far beyond the range of direct evaluation.
struct LogWeight {
    double value;
    double weight() const;
};

// Regularized lower incomplete gamma P(n+1, x) = gamma(n+1, x)/n!, evaluated
// through the Poisson survival identity P(n+1, x) = 1 - sum_{k<=n} pmf(k; x).
// Monotone increasing in x, decreasing in n. Throws DomainError for x < 0.
double regularized_lower_gamma(int n_plus_1, double x);

// log of the Poisson pmf x^k e^{-x} / k!; requires x > 0.
LogWeight log_poisson_pmf(int k, double x);

// Physicists' Hermite polynomial H_n at a complex argument, by the three-term
// recurrence H_{n+1}(z) = 2z H_n(z) - 2n H_{n-1}(z). Throws IntegrityError if
// an intermediate magnitude exceeds 1e300 (explicit overflow guard).
std::complex<double> hermite_complex(int n, std::complex<double> z);

// Laguerre polynomial L_n(x) by the stable three-term recurrence.
double laguerre(int n, double x);

// Smallest n_max such that the Poisson tail P(n_max+1, x) drops below tau,
// i.e. a cutoff adequate for a coherent state of energy x = |alpha|^2.
int poisson_tail_cutoff(double x, double tau);

} // namespace gmms

#pragma once

// Independent reference computations for the test suite. Everything here is
// deliberately written against different machinery than the library paths it
// checks (dense bipartite projectors, adaptive Simpson, long-double or MPFR
// arithmetic, truncated operator exponentials).

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "gmms/fock.hpp"
#include "gmms/purify.hpp"

namespace oracles {

using cplx = std::complex<double>;

// Adaptive Simpson quadrature to the requested absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// Reduced state on A from the full (d^2)x(d^2) bipartite projector |psi><psi|,
// summing <k|_B ... |k>_B explicitly.
std::vector<cplx> dense_reduced_A(const std::vector<cplx>& psi, int dim);

// Schmidt state as a full bipartite vector, then dense_reduced_A.
std::vector<cplx> dense_reduced_A(const gmms::SchmidtPureState& state);

// Hermite recurrence carried in long double (extended precision oracle).
std::complex<long double> hermite_long_double(int n, std::complex<long double> z);

// ln(x^k e^{-x} / k!) evaluated with ~250 decimal digits via MPFR.
double mpfr_log_poisson(long k, double x);

// Amplitudes of S(zeta) D(alpha) |0> by truncated operator exponentials
// (Eigen matrix exponential) in a padded space; first dim entries returned.
std::vector<cplx> sc_ket_expm(cplx alpha, double s, double phi, int n_max, int pad = 60);

// Deterministic Haar-like unitary from a seeded complex Gaussian QR.
gmms::AncillaUnitary random_unitary(gmms::FockCutoff cutoff, std::mt19937_64& rng);

} // namespace oracles

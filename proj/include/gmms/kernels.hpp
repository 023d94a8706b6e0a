#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops behind the operator algebra. Each kernel has a
// scalar reference implementation and an AVX2/FMA variant; the active set is
// chosen once per process (cpuid, overridable) and every variant is
// equivalence-tested against the scalar reference.
//
// Complex buffers are interleaved (re, im) doubles, matrices row-major.

namespace gmms::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

// Backend selected at first use: AVX2 when the CPU supports it, else scalar.
// The GMMS_KERNELS environment variable ("scalar" | "avx2") overrides.
Backend active_backend();

// Force a backend (throws DomainError if unsupported on this CPU).
void set_backend(Backend backend);

bool cpu_has_avx2();

const char* backend_name(Backend backend);

// acc[i] += w * x[i]
void axpy(double* acc, const double* x, double w, std::size_t n);

// acc(m,n) += w * ket[m] * conj(ket[n]); preserves Hermitian symmetry exactly.
void rank1_accumulate(cplx* acc, const cplx* ket, double w, std::size_t dim);

// y = m * x for a dense row-major dim x dim matrix.
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t dim);

// sum_i conj(x[i]) * y[i]
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);

// sum_i x[i]^2
double sum_sq(const double* x, std::size_t n);

// sum_i (a[i] - b[i])^2
double sum_sq_diff(const double* a, const double* b, std::size_t n);

// Reference (always-scalar) entry points, used by the equivalence tests.
namespace scalar {
void axpy(double* acc, const double* x, double w, std::size_t n);
void rank1_accumulate(cplx* acc, const cplx* ket, double w, std::size_t dim);
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t dim);
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
} // namespace scalar

} // namespace gmms::kernels

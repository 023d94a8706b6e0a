#include "gmms/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "gmms/errors.hpp"

namespace gmms::kernels {

namespace scalar {

void axpy(double* acc, const double* x, double w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * x[i];
}

void rank1_accumulate(cplx* acc, const cplx* ket, double w, std::size_t dim) {
    // The conjugate product is formed first and scaled by w afterwards; that
    // order (with contraction disabled) keeps the (m,n)/(n,m) pair an exact
    // conjugate pair in IEEE arithmetic even for w != 1.
    for (std::size_t m = 0; m < dim; ++m) {
        const double ar = ket[m].real();
        const double ai = ket[m].imag();
        cplx* row = acc + m * dim;
        for (std::size_t n = 0; n < dim; ++n) {
            const double kr = ket[n].real();
            const double ki = ket[n].imag();
            const double pre = ar * kr + ai * ki;
            const double pim = ai * kr - ar * ki;
            row[n] += cplx(w * pre, w * pim);
        }
    }
}

void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) {
        const cplx* row = m + i * dim;
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
            im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
        }
        y[i] = cplx(re, im);
    }
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

double sum_sq(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy(double* acc, const double* x, double w, std::size_t n);
void rank1_accumulate(cplx* acc, const cplx* ket, double w, std::size_t dim);
void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t dim);
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_sq_diff(const double* a, const double* b, std::size_t n);
} // namespace avx2
#endif

namespace {

struct Dispatch {
    void (*axpy)(double*, const double*, double, std::size_t);
    void (*rank1_accumulate)(cplx*, const cplx*, double, std::size_t);
    void (*matvec)(const cplx*, const cplx*, cplx*, std::size_t);
    cplx (*dot_conj)(const cplx*, const cplx*, std::size_t);
    double (*sum_sq)(const double*, std::size_t);
    double (*sum_sq_diff)(const double*, const double*, std::size_t);
};

constexpr Dispatch kScalar{scalar::axpy,     scalar::rank1_accumulate, scalar::matvec,
                           scalar::dot_conj, scalar::sum_sq,           scalar::sum_sq_diff};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Dispatch kAvx2{avx2::axpy,     avx2::rank1_accumulate, avx2::matvec,
                         avx2::dot_conj, avx2::sum_sq,           avx2::sum_sq_diff};
#endif

std::atomic<const Dispatch*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const Dispatch* table_for(Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
    if (backend == Backend::avx2) return &kAvx2;
#endif
    (void)backend;
    return &kScalar;
}

Backend pick_default() {
    if (const char* env = std::getenv("GMMS_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::avx2;
    }
    return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

const Dispatch& table() {
    const Dispatch* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        const Backend b = pick_default();
        g_backend.store(b, std::memory_order_relaxed);
        t = table_for(b);
        g_table.store(t, std::memory_order_release);
    }
    return *t;
}

} // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    table();
    return g_backend.load(std::memory_order_relaxed);
}

void set_backend(Backend backend) {
    if (backend == Backend::avx2 && !cpu_has_avx2())
        throw DomainError("avx2 kernels unavailable on this CPU");
    g_backend.store(backend, std::memory_order_relaxed);
    g_table.store(table_for(backend), std::memory_order_release);
}

const char* backend_name(Backend backend) {
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

void axpy(double* acc, const double* x, double w, std::size_t n) { table().axpy(acc, x, w, n); }

void rank1_accumulate(cplx* acc, const cplx* ket, double w, std::size_t dim) {
    table().rank1_accumulate(acc, ket, w, dim);
}

void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t dim) { table().matvec(m, x, y, dim); }

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) { return table().dot_conj(x, y, n); }

double sum_sq(const double* x, std::size_t n) { return table().sum_sq(x, n); }

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return table().sum_sq_diff(a, b, n);
}

} // namespace gmms::kernels

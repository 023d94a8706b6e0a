// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; nothing here runs unless the dispatcher selected the avx2
// backend after a cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "gmms/kernels.hpp"

namespace gmms::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline const double* as_d(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_d(cplx* p) { return reinterpret_cast<double*>(p); }

} // namespace

void axpy(double* acc, const double* x, double w, std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(acc + i);
        const __m256d b = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(vw, b, a));
    }
    for (; i < n; ++i) acc[i] += w * x[i];
}

void rank1_accumulate(cplx* acc, const cplx* ket, double w, std::size_t dim) {
    const double* k = as_d(ket);
    const __m256d vw = _mm256_set1_pd(w);
    for (std::size_t m = 0; m < dim; ++m) {
        const double ar = k[2 * m];
        const double ai = k[2 * m + 1];
        // p = ket[m] * conj(ket[n]) with each product rounded individually,
        // then acc += w * p: symmetric under m<->n, so the (m,n)/(n,m) pair
        // stays an exact conjugate pair (matches the scalar reference order).
        const __m256d v1 = _mm256_setr_pd(ar, ai, ar, ai);
        const __m256d v2 = _mm256_setr_pd(ai, -ar, ai, -ar);
        double* row = as_d(acc + m * dim);
        std::size_t n = 0;
        for (; n + 2 <= dim; n += 2) {
            const __m256d kk = _mm256_loadu_pd(k + 2 * n);
            const __m256d kr = _mm256_movedup_pd(kk);           // [kr0, kr0, kr1, kr1]
            const __m256d ki = _mm256_permute_pd(kk, 0xF);      // [ki0, ki0, ki1, ki1]
            const __m256d p = _mm256_add_pd(_mm256_mul_pd(v1, kr), _mm256_mul_pd(v2, ki));
            __m256d a = _mm256_loadu_pd(row + 2 * n);
            a = _mm256_fmadd_pd(vw, p, a);
            _mm256_storeu_pd(row + 2 * n, a);
        }
        for (; n < dim; ++n) {
            const double kr = k[2 * n];
            const double ki = k[2 * n + 1];
            const double pre = ar * kr + ai * ki;
            const double pim = ai * kr - ar * ki;
            row[2 * n] = std::fma(w, pre, row[2 * n]);
            row[2 * n + 1] = std::fma(w, pim, row[2 * n + 1]);
        }
    }
}

void matvec(const cplx* m, const cplx* x, cplx* y, std::size_t dim) {
    const double* xd = as_d(x);
    for (std::size_t i = 0; i < dim; ++i) {
        const double* row = as_d(m + i * dim);
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= dim; j += 2) {
            const __m256d mm = _mm256_loadu_pd(row + 2 * j);
            const __m256d xx = _mm256_loadu_pd(xd + 2 * j);
            const __m256d mr = _mm256_movedup_pd(mm);
            const __m256d mi = _mm256_permute_pd(mm, 0xF);
            const __m256d xsw = _mm256_permute_pd(xx, 0x5);     // [xi, xr] pairs
            // acc += mr*xx; then (re -= mi*xi, im += mi*xr) via addsub.
            acc = _mm256_addsub_pd(_mm256_fmadd_pd(mr, xx, acc), _mm256_mul_pd(mi, xsw));
        }
        double re = acc[0] + acc[2];
        double im = acc[1] + acc[3];
        for (; j < dim; ++j) {
            re += row[2 * j] * xd[2 * j] - row[2 * j + 1] * xd[2 * j + 1];
            im += row[2 * j] * xd[2 * j + 1] + row[2 * j + 1] * xd[2 * j];
        }
        y[i] = cplx(re, im);
    }
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
    const double* xd = as_d(x);
    const double* yd = as_d(y);
    // re = sum over all lanes of x .* y; im = sum of x .* swap(y) with the
    // odd lanes sign-flipped.
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xx = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yy = _mm256_loadu_pd(yd + 2 * i);
        acc_re = _mm256_fmadd_pd(xx, yy, acc_re);
        const __m256d ysw = _mm256_mul_pd(_mm256_permute_pd(yy, 0x5), sign);
        acc_im = _mm256_fmadd_pd(xx, ysw, acc_im);
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; i < n; ++i) {
        re += xd[2 * i] * yd[2 * i] + xd[2 * i + 1] * yd[2 * i + 1];
        im += xd[2 * i] * yd[2 * i + 1] - xd[2 * i + 1] * yd[2 * i];
    }
    return {re, im};
}

double sum_sq(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

} // namespace gmms::kernels::avx2

#endif // x86_64

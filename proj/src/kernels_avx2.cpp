// AVX2+FMA lane. This TU is built with -mavx2 -mfma; callers reach it only
// through the dispatcher after a runtime CPU check.

#include "qsm/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace qsm::kernels {
namespace {

// Complex product on interleaved [re im re im] lanes: addsub of v·ar and
// vswap·ai gives (re·ar − im·ai, im·ar + re·ai) per complex. Deliberately
// mul+addsub rather than fmaddsub: rounding then matches std::complex
// arithmetic in the scalar lane bit for bit.
inline __m256d cmul(__m256d v, __m256d ar, __m256d ai) {
    __m256d vswap = _mm256_permute_pd(v, 0x5);
    return _mm256_addsub_pd(_mm256_mul_pd(v, ar), _mm256_mul_pd(vswap, ai));
}

inline __m256d cmul_acc(__m256d acc, __m256d v, __m256d ar, __m256d ai) {
    return _mm256_add_pd(acc, cmul(v, ar, ai));
}

void matmul_avx2(int m, int k, int n, const cplx* a, const cplx* b, cplx* c) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (int i = 0; i < m * n; ++i) c[i] = cplx{0.0, 0.0};
    const int n2 = n & ~1;  // columns handled two complexes at a time
    for (int i = 0; i < m; ++i) {
        const cplx* arow = a + static_cast<std::size_t>(i) * k;
        double* crow = cd + static_cast<std::size_t>(i) * n * 2;
        for (int l = 0; l < k; ++l) {
            const cplx ail = arow[l];
            if (ail == cplx{0.0, 0.0}) continue;
            const __m256d ar = _mm256_set1_pd(ail.real());
            const __m256d ai = _mm256_set1_pd(ail.imag());
            const double* brow = bd + static_cast<std::size_t>(l) * n * 2;
            int j = 0;
            for (; j < n2; j += 2) {
                __m256d acc = _mm256_loadu_pd(crow + 2 * j);
                acc = cmul_acc(acc, _mm256_loadu_pd(brow + 2 * j), ar, ai);
                _mm256_storeu_pd(crow + 2 * j, acc);
            }
            for (; j < n; ++j) {
                cplx* cc = reinterpret_cast<cplx*>(crow) + j;
                *cc += ail * reinterpret_cast<const cplx*>(brow)[j];
            }
        }
    }
}

// dst = alpha*src over n complexes (used by kron rows).
inline void scaled_copy(std::size_t n, cplx alpha, const cplx* src, cplx* dst) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* s = reinterpret_cast<const double*>(src);
    double* d = reinterpret_cast<double*>(dst);
    std::size_t i = 0;
    const std::size_t n2 = n & ~std::size_t{1};
    for (; i < n2; i += 2) _mm256_storeu_pd(d + 2 * i, cmul(_mm256_loadu_pd(s + 2 * i), ar, ai));
    for (; i < n; ++i) dst[i] = alpha * src[i];
}

void kron_avx2(int ra, int ca, int rb, int cb, const cplx* a, const cplx* b, cplx* c) {
    const int cols = ca * cb;
    for (int i = 0; i < ra; ++i) {
        for (int j = 0; j < ca; ++j) {
            const cplx aij = a[static_cast<std::size_t>(i) * ca + j];
            for (int p = 0; p < rb; ++p) {
                scaled_copy(static_cast<std::size_t>(cb), aij, b + static_cast<std::size_t>(p) * cb,
                            c + static_cast<std::size_t>(i * rb + p) * cols + static_cast<std::size_t>(j) * cb);
            }
        }
    }
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    const std::size_t n2 = n & ~std::size_t{1};
    for (; i < n2; i += 2) {
        __m256d acc = _mm256_loadu_pd(yd + 2 * i);
        acc = cmul_acc(acc, _mm256_loadu_pd(xd + 2 * i), ar, ai);
        _mm256_storeu_pd(yd + 2 * i, acc);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(std::size_t n, cplx alpha, cplx* x) {
    scaled_copy(n, alpha, x, x);
}

cplx dot_conj_avx2(std::size_t n, const cplx* x, const cplx* y) {
    // conj(x)·y: re parts from x∘y summed pairwise, im parts from swap(x)∘y
    // with alternating signs (xr·yi − xi·yr).
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_p = _mm256_setzero_pd();
    __m256d acc_q = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n2 = n & ~std::size_t{1};
    for (; i < n2; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        acc_p = _mm256_fmadd_pd(xv, yv, acc_p);
        acc_q = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), yv, acc_q);
    }
    alignas(32) double p[4], q[4];
    _mm256_store_pd(p, acc_p);
    _mm256_store_pd(q, acc_q);
    double re = p[0] + p[1] + p[2] + p[3];
    double im = (q[1] - q[0]) + (q[3] - q[2]);
    for (; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return cplx{re, im};
}

double sum_abs2_avx2(std::size_t n, const cplx* x) {
    const double* xd = reinterpret_cast<const double*>(x);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const std::size_t n2 = n & ~std::size_t{1};
    for (; i < n2; i += 2) {
        __m256d v = _mm256_loadu_pd(xd + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double p[4];
    _mm256_store_pd(p, acc);
    double s = p[0] + p[1] + p[2] + p[3];
    for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

}  // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops{
        "avx2", &matmul_avx2, &kron_avx2, &axpy_avx2, &scale_avx2, &dot_conj_avx2, &sum_abs2_avx2,
    };
    return &ops;
}

}  // namespace qsm::kernels

#else

namespace qsm::kernels {
const Ops* avx2_ops_impl() {
    return nullptr;
}
}  // namespace qsm::kernels

#endif

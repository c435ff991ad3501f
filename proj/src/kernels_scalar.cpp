#include "qsm/kernels.hpp"

namespace qsm::kernels {
namespace {

void matmul_scalar(int m, int k, int n, const cplx* a, const cplx* b, cplx* c) {
    for (int i = 0; i < m * n; ++i) c[i] = cplx{0.0, 0.0};
    for (int i = 0; i < m; ++i) {
        const cplx* arow = a + static_cast<std::size_t>(i) * k;
        cplx* crow = c + static_cast<std::size_t>(i) * n;
        for (int l = 0; l < k; ++l) {
            const cplx ail = arow[l];
            if (ail == cplx{0.0, 0.0}) continue;
            const cplx* brow = b + static_cast<std::size_t>(l) * n;
            for (int j = 0; j < n; ++j) crow[j] += ail * brow[j];
        }
    }
}

void kron_scalar(int ra, int ca, int rb, int cb, const cplx* a, const cplx* b, cplx* c) {
    const int cols = ca * cb;
    for (int i = 0; i < ra; ++i) {
        for (int j = 0; j < ca; ++j) {
            const cplx aij = a[static_cast<std::size_t>(i) * ca + j];
            for (int p = 0; p < rb; ++p) {
                cplx* dst = c + static_cast<std::size_t>(i * rb + p) * cols + static_cast<std::size_t>(j) * cb;
                const cplx* src = b + static_cast<std::size_t>(p) * cb;
                for (int q = 0; q < cb; ++q) dst[q] = aij * src[q];
            }
        }
    }
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(std::size_t n, cplx alpha, cplx* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

cplx dot_conj_scalar(std::size_t n, const cplx* x, const cplx* y) {
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double sum_abs2_scalar(std::size_t n, const cplx* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{
        "scalar", &matmul_scalar, &kron_scalar, &axpy_scalar, &scale_scalar, &dot_conj_scalar, &sum_abs2_scalar,
    };
    return ops;
}

}  // namespace qsm::kernels

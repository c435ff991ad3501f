#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace qsm::kernels {

using cplx = std::complex<double>;

/// One lane of the arithmetic core: dense complex-double kernels over
/// row-major interleaved storage. The scalar lane is the reference
/// implementation; vector lanes must agree with it to rounding error
/// (equivalence-tested in tests/test_kernels.cpp).
struct Ops {
    const char* name;

    /// c(m×n) = a(m×k) · b(k×n); c is overwritten.
    void (*matmul)(int m, int k, int n, const cplx* a, const cplx* b, cplx* c);

    /// c = a ⊗ b with a(ra×ca), b(rb×cb); c is (ra·rb)×(ca·cb), overwritten.
    void (*kron)(int ra, int ca, int rb, int cb, const cplx* a, const cplx* b, cplx* c);

    /// y += alpha·x
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);

    /// x *= alpha
    void (*scale)(std::size_t n, cplx alpha, cplx* x);

    /// Σ_i conj(x_i)·y_i
    cplx (*dot_conj)(std::size_t n, const cplx* x, const cplx* y);

    /// Σ_i |x_i|²
    double (*sum_abs2)(std::size_t n, const cplx* x);
};

const Ops& scalar_ops();

/// AVX2+FMA lane, or nullptr when the CPU lacks support.
const Ops* avx2_ops();

/// Lane chosen at first use: AVX2 when the CPU supports it, else scalar.
/// The QSM_KERNEL_LANE environment variable ("scalar"/"avx2") overrides.
const Ops& active();

/// Force a lane by name ("auto", "scalar", "avx2"); throws on an
/// unavailable lane. Intended for tests and benchmarking.
void select_lane(const std::string& name);

}  // namespace qsm::kernels

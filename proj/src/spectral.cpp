#include "qsm/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

namespace qsm {

namespace {

Matrix sandwich(const Matrix& basis, const std::vector<cplx>& diag) {
    // basis·diag·basis† without forming the diagonal matrix.
    const int n = basis.rows();
    Matrix scaled = basis;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) scaled(i, j) *= diag[j];
    return scaled * basis.adjoint();
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
    std::vector<cplx> d(eigenvalues.begin(), eigenvalues.end());
    return sandwich(basis, d);
}

Matrix SpectralDecomposition::apply(const std::function<double(double)>& f) const {
    std::vector<cplx> d;
    d.reserve(eigenvalues.size());
    for (double ev : eigenvalues) {
        double v = f(ev);
        if (!std::isfinite(v)) throw DomainError("spectral function not finite at eigenvalue " + std::to_string(ev));
        d.emplace_back(v, 0.0);
    }
    return sandwich(basis, d);
}

Matrix SpectralDecomposition::apply_complex(const std::function<cplx(double)>& f) const {
    std::vector<cplx> d;
    d.reserve(eigenvalues.size());
    for (double ev : eigenvalues) {
        cplx v = f(ev);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("spectral function not finite at eigenvalue " + std::to_string(ev));
        d.push_back(v);
    }
    return sandwich(basis, d);
}

SpectralDecomposition spectral_decompose(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("spectral decomposition needs a square matrix");
    const double scale = frobenius_norm(a);
    if (hermiticity_defect(a) > kHermTol * std::max(scale, 1.0))
        throw NotHermitian("matrix is not self-adjoint within 1e-10·‖a‖");

    const int n = a.rows();
    Matrix work = hermitian_part(a);
    std::vector<double> w(n);
    int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'L', n, reinterpret_cast<lapack_complex_double*>(work.data()),
                             n, w.data());
    if (info != 0) throw Error("eigensolver failed, info=" + std::to_string(info));

    // With LAPACK_ROW_MAJOR, work(i,k) is component i of eigenvector k,
    // so columns are eigenvectors, matching the basis convention.
    return SpectralDecomposition{std::move(w), std::move(work)};
}

Matrix apply_spectral_function(const Matrix& a, const std::function<double(double)>& f) {
    return spectral_decompose(a).apply(f);
}

Matrix mat_exp(const Matrix& a) {
    return apply_spectral_function(a, [](double x) { return std::exp(x); });
}

Matrix mat_log(const Matrix& a) {
    return apply_spectral_function(a, [](double x) { return std::log(x); });
}

Matrix mat_sqrt(const Matrix& a) {
    return apply_spectral_function(a, [](double x) { return std::sqrt(x); });
}

Matrix mat_abs(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("|a| needs a square matrix");
    return mat_sqrt(a.adjoint() * a);
}

std::pair<Matrix, Matrix> polar_decompose(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("polar decomposition needs a square matrix");
    SpectralDecomposition gram = spectral_decompose(a.adjoint() * a);
    const double smax = std::sqrt(std::max(gram.eigenvalues.back(), 0.0));
    const double smin = std::sqrt(std::max(gram.eigenvalues.front(), 0.0));
    if (smin <= 1e-12 * smax) throw SingularInput("polar decomposition requires trivial kernel");

    Matrix modulus = gram.apply([](double x) { return std::sqrt(std::max(x, 0.0)); });
    Matrix modulus_inv = gram.apply([](double x) { return 1.0 / std::sqrt(x); });
    return {a * modulus_inv, std::move(modulus)};
}

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    if (!a.square()) {
        // Largest singular value via the Gram matrix either way.
        Matrix g = a.adjoint() * a;
        SpectralDecomposition sd = spectral_decompose(g);
        return std::sqrt(std::max(sd.eigenvalues.back(), 0.0));
    }
    SpectralDecomposition sd = spectral_decompose(a.adjoint() * a);
    return std::sqrt(std::max(sd.eigenvalues.back(), 0.0));
}

double trace_norm(const Matrix& a) {
    SpectralDecomposition sd = spectral_decompose(a.adjoint() * a);
    double s = 0.0;
    for (double ev : sd.eigenvalues) s += std::sqrt(std::max(ev, 0.0));
    return s;
}

double norm(const Matrix& a, NormKind kind) {
    switch (kind) {
        case NormKind::Operator:
            return operator_norm(a);
        case NormKind::Trace:
            return trace_norm(a);
        case NormKind::Frobenius:
            return frobenius_norm(a);
    }
    throw Error("unreachable norm kind");
}

}  // namespace qsm

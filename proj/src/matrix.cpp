#include "qsm/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qsm/kernels.hpp"

namespace qsm {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("matrix dimensions must be nonnegative");
}

Matrix::Matrix(int rows, int cols, std::vector<cplx> entries) : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw DimensionMismatch("entry count does not match rows×cols");
    if (!finite()) throw DomainError("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw DimensionMismatch("ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<cplx>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m.data_[i * d.size() + i] = d[i];
    return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("shape mismatch in +");
    kernels::active().axpy(data_.size(), cplx{1.0, 0.0}, other.data(), data());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("shape mismatch in -");
    kernels::active().axpy(data_.size(), cplx{-1.0, 0.0}, other.data(), data());
    return *this;
}

Matrix& Matrix::operator*=(cplx alpha) {
    kernels::active().scale(data_.size(), alpha, data());
    return *this;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::conjugate() const {
    Matrix m = *this;
    for (auto& v : m.data_) v = std::conj(v);
    return m;
}

cplx Matrix::trace() const {
    if (!square()) throw DimensionMismatch("trace of non-square matrix");
    cplx t{0.0, 0.0};
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

bool Matrix::finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Matrix operator+(Matrix a, const Matrix& b) {
    a += b;
    return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
    a -= b;
    return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("shape mismatch in *");
    Matrix c(a.rows(), b.cols());
    kernels::active().matmul(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
    return c;
}

Matrix operator*(cplx alpha, Matrix a) {
    a *= alpha;
    return a;
}

Matrix operator*(Matrix a, cplx alpha) {
    a *= alpha;
    return a;
}

Matrix operator-(Matrix a) {
    a *= cplx{-1.0, 0.0};
    return a;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
    kernels::active().kron(a.rows(), a.cols(), b.rows(), b.cols(), a.data(), b.data(), c.data());
    return c;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

double frobenius_norm(const Matrix& a) {
    return std::sqrt(kernels::active().sum_abs2(a.size(), a.data()));
}

cplx hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("shape mismatch in hs_inner");
    return kernels::active().dot_conj(a.size(), a.data(), b.data());
}

cplx trace_product(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionMismatch("shape mismatch in trace_product");
    // tr(ab) = Σ_ik a(i,k) b(k,i) = <a† , b> in HS form; do it directly.
    cplx t{0.0, 0.0};
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    return t;
}

double hermiticity_defect(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("hermiticity defect of non-square matrix");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            cplx d = a(i, j) - std::conj(a(j, i));
            s += std::norm(d);
        }
    return std::sqrt(s);
}

Matrix hermitian_part(const Matrix& a) {
    if (!a.square()) throw DimensionMismatch("hermitian part of non-square matrix");
    Matrix h(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

Matrix partial_trace(const Matrix& a, const std::vector<int>& dims, const std::vector<int>& keep) {
    if (!a.square()) throw DimensionMismatch("partial trace of non-square matrix");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw DimensionMismatch("factor dimensions must be positive");
        total *= d;
    }
    if (total != a.rows()) throw DimensionMismatch("product of factor dims does not match matrix dimension");
    const int f = static_cast<int>(dims.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= f) throw DimensionMismatch("keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1]) throw DimensionMismatch("keep indices must be strictly ascending");
    }

    std::vector<int> strides(f, 1);
    for (int i = f - 2; i >= 0; --i) strides[i] = strides[i + 1] * dims[i + 1];

    std::vector<int> traced;
    for (int i = 0; i < f; ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

    long keep_dim = 1;
    for (int i : keep) keep_dim *= dims[i];
    long traced_dim = 1;
    for (int i : traced) traced_dim *= dims[i];

    // Row/col offsets of every kept and traced multi-index.
    auto offsets = [&](const std::vector<int>& factors) {
        std::vector<long> off;
        long count = 1;
        for (int i : factors) count *= dims[i];
        off.reserve(count);
        std::vector<int> digit(factors.size(), 0);
        for (long c = 0; c < count; ++c) {
            long o = 0;
            for (std::size_t i = 0; i < factors.size(); ++i) o += static_cast<long>(digit[i]) * strides[factors[i]];
            off.push_back(o);
            for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
                if (++digit[i] < dims[factors[i]]) break;
                digit[i] = 0;
            }
        }
        return off;
    };

    const std::vector<long> keep_off = offsets(keep);
    const std::vector<long> traced_off = offsets(traced);

    Matrix out(static_cast<int>(keep_dim), static_cast<int>(keep_dim));
    for (long i = 0; i < keep_dim; ++i)
        for (long j = 0; j < keep_dim; ++j) {
            cplx s{0.0, 0.0};
            for (long t = 0; t < traced_dim; ++t)
                s += a(static_cast<int>(keep_off[i] + traced_off[t]), static_cast<int>(keep_off[j] + traced_off[t]));
            out(static_cast<int>(i), static_cast<int>(j)) = s;
        }
    return out;
}

Matrix pauli_x() {
    return Matrix{{0.0, 1.0}, {1.0, 0.0}};
}

Matrix pauli_y() {
    return Matrix{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
}

Matrix pauli_z() {
    return Matrix{{1.0, 0.0}, {0.0, -1.0}};
}

Matrix pauli_plus() {
    return Matrix{{0.0, 1.0}, {0.0, 0.0}};
}

Matrix pauli_minus() {
    return Matrix{{0.0, 0.0}, {1.0, 0.0}};
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cplx{gauss(rng), gauss(rng)};
    return m;
}

Matrix random_hermitian(std::mt19937_64& rng, int n) {
    return hermitian_part(random_matrix(rng, n, n));
}

Matrix random_unitary(std::mt19937_64& rng, int n) {
    // Gram-Schmidt on a Gaussian matrix; retries are astronomically unlikely.
    for (;;) {
        Matrix g = random_matrix(rng, n, n);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            for (int k = 0; k < j; ++k) {
                cplx proj{0.0, 0.0};
                for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
                for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
            }
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-8) {
                ok = false;
                break;
            }
            for (int i = 0; i < n; ++i) g(i, j) /= nrm;
        }
        if (ok) return g;
    }
}

}  // namespace qsm

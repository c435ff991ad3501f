#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <vector>

#include "qsm/errors.hpp"

namespace qsm {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Pure value type: every operation
/// returns a fresh matrix, so values are safe to share across threads.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);                    // zero-filled
    Matrix(int rows, int cols, std::vector<cplx> entries);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(int n);
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
    static Matrix diagonal(const std::vector<cplx>& d);
    static Matrix scalar(cplx value) { return Matrix(1, 1, {value}); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(cplx alpha);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    cplx trace() const;

    /// True when every entry is finite (no NaN/Inf).
    bool finite() const;

    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx alpha, Matrix a);
Matrix operator*(Matrix a, cplx alpha);
Matrix operator-(Matrix a);

/// Kronecker product, (a⊗b)[(i·rb+p),(j·cb+q)] = a(i,j)·b(p,q).
Matrix tensor_product(const Matrix& a, const Matrix& b);

Matrix commutator(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
cplx hs_inner(const Matrix& a, const Matrix& b);  // tr(a†b)

/// tr(a·b) without forming the product.
cplx trace_product(const Matrix& a, const Matrix& b);

/// Frobenius distance of a from its own adjoint, ‖a − a†‖_F.
double hermiticity_defect(const Matrix& a);

/// (a + a†)/2
Matrix hermitian_part(const Matrix& a);

/// Trace over the factors not listed in `keep`. `dims` declares the tensor
/// factorization of the (square) matrix in caller order; `keep` lists the
/// factor indices to retain, ascending.
Matrix partial_trace(const Matrix& a, const std::vector<int>& dims, const std::vector<int>& keep);

// Single-qubit constants.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix pauli_plus();   // |0><1| raising against σ_z = diag(1,−1)
Matrix pauli_minus();

// Seeded generators used by tests and the CLI drivers.
Matrix random_matrix(std::mt19937_64& rng, int rows, int cols);
Matrix random_hermitian(std::mt19937_64& rng, int n);
Matrix random_unitary(std::mt19937_64& rng, int n);

}  // namespace qsm

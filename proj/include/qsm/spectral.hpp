#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qsm/matrix.hpp"

namespace qsm {

/// Eigensystem of a self-adjoint matrix: a = basis·diag(eigenvalues)·basis†,
/// eigenvalues ascending, basis unitary within 1e-12·dim.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    Matrix basis;

    Matrix reconstruct() const;

    /// basis·diag(f(λ))·basis†. Throws DomainError when f is not finite at
    /// some eigenvalue (log of a non-positive spectrum, etc.).
    Matrix apply(const std::function<double(double)>& f) const;
    Matrix apply_complex(const std::function<cplx(double)>& f) const;
};

/// Relative tolerances used across the spectral layer; scales are Frobenius.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kReconstructTol = 1e-10;
inline constexpr double kUnitarityTol = 1e-12;

/// Requires a self-adjoint within 1e-10·‖a‖; symmetrizes (a+a†)/2 and
/// diagonalizes. Throws NotHermitian past the tolerance.
SpectralDecomposition spectral_decompose(const Matrix& a);

Matrix apply_spectral_function(const Matrix& a, const std::function<double(double)>& f);

Matrix mat_exp(const Matrix& a);
Matrix mat_log(const Matrix& a);
Matrix mat_sqrt(const Matrix& a);
Matrix mat_abs(const Matrix& a);  // (a†a)^{1/2}, defined for any square a

/// A = unitary·modulus with modulus = (a†a)^{1/2} positive. Requires
/// trivial kernel (smallest singular value > 1e-12·‖a‖), else SingularInput.
std::pair<Matrix, Matrix> polar_decompose(const Matrix& a);

enum class NormKind { Operator, Trace, Frobenius };

double norm(const Matrix& a, NormKind kind);
double operator_norm(const Matrix& a);
double trace_norm(const Matrix& a);

}  // namespace qsm

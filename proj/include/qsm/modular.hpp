#pragma once

#include <vector>

#include "qsm/states.hpp"

namespace qsm {

/// Cyclic representation of the full matrix algebra M_n induced by a
/// faithful state ρ: the representation space is M_n with inner product
/// (A,B) = ρ(A*B), realized on C^{n²} in an orthonormal basis, Ω is the
/// class of 1 and π(A) acts by left multiplication.
struct GnsRep {
    int ambient_dim = 0;             // n
    Matrix rho;                      // density matrix of the inducing state
    std::vector<Matrix> gram_basis;  // orthonormal basis of the space, as n×n matrices
    Matrix omega;                    // n²×1 coordinates of [1]
    Matrix to_coords;                // vec(X) → orthonormal coordinates
    Matrix from_coords;              // inverse map

    Matrix left_action(const Matrix& a) const;

    /// Coordinates of the class [x].
    Matrix vector_of(const Matrix& x) const;

    /// Class representative of a coordinate vector.
    Matrix matrix_of(const Matrix& coords) const;
};

/// Throws NonFaithfulState when ρ has a numerical kernel (the quotient
/// construction is out of scope).
GnsRep gns_build(const DensityState& rho);

/// Orthonormal (Hilbert-Schmidt) basis of {A : [A, B_k] = 0 ∀k}, computed
/// from the null space of the stacked commutator system.
std::vector<Matrix> commutant_basis(const std::vector<Matrix>& algebra_basis, int ambient_dim);

/// Antilinear operators are stored as the matrix M of v ↦ M·conj(v) in the
/// orthonormal GNS basis; the adjoint of such an operator has matrix Mᵀ.
/// S is the closure of AΩ ↦ A*Ω, Δ = S*S its modulus squared, J the
/// antiunitary from the polar splitting S = J·Δ^{1/2}.
struct TomitaData {
    Matrix s_matrix;
    Matrix delta;
    Matrix j_matrix;
};

/// Throws NonSeparatingVector on numerical rank deficiency of Δ.
TomitaData tomita_build(const GnsRep& rep);

struct TomitaCheckRow {
    int basis_index;
    double t;
    double commutant_residual;  // J·π(A)·J against the computed commutant
    double flow_residual;       // Δ^{it}·π(A)·Δ^{−it} against the algebra
};

struct TomitaReport {
    std::vector<TomitaCheckRow> rows;
    double max_commutant_residual = 0.0;
    double max_flow_residual = 0.0;
};

TomitaReport verify_tomita_takesaki(const GnsRep& rep, const TomitaData& data, const std::vector<double>& t_grid);

/// |(Δ^{1/2}π(a)Ω, Δ^{1/2}π(b)Ω) − (π(b*)Ω, π(a*)Ω)|.
double modular_condition_residual(const GnsRep& rep, const TomitaData& data, const Matrix& a, const Matrix& b);

struct ModularFlowReport {
    int sign;                     // the matching s ∈ {+1,−1}
    double matched_residual;      // max ‖Δ^{it}π(A)Δ^{−it} − π(α^{sβt}A)‖
    double rejected_residual;     // same for the opposite sign
};

/// Finds the unique sign s with Δ^{it}·π(A)·Δ^{−it} = π(α^{sβt}A) across
/// the basis and the whole t-grid, for the Gibbs state of h at β. The
/// sign is discovered, not assumed.
ModularFlowReport modular_flow_match(const LocalOperator& h, double beta, const std::vector<double>& t_grid);

}  // namespace qsm

#pragma once

#include <vector>

#include "qsm/dynamics.hpp"

namespace qsm {

/// Positive unit-trace operator on a region. Validated at construction:
/// self-adjoint within 1e-12·‖·‖, eigenvalues ≥ −1e-12, trace 1 within
/// 1e-12. Faithful when the smallest eigenvalue exceeds 1e-12.
class DensityState {
public:
    DensityState(Lattice lattice, Region region, Matrix matrix);

    static DensityState maximally_mixed(const Lattice& lattice, const Region& region);

    const Lattice& lattice() const { return lattice_; }
    const Region& region() const { return region_; }
    const Matrix& matrix() const { return matrix_; }
    bool faithful() const { return faithful_; }
    double min_eigenvalue() const { return min_eigenvalue_; }

    LocalOperator as_operator() const { return LocalOperator(lattice_, region_, matrix_); }

private:
    Lattice lattice_;
    Region region_;
    Matrix matrix_;
    double min_eigenvalue_ = 0.0;
    bool faithful_ = false;
};

/// e^{−βH}/Tr e^{−βH}; always faithful. Negative β reaches the opposite
/// sign convention.
DensityState gibbs_state(const LocalOperator& h, double beta);

/// Tr(ρ·A), with A embedded into the state's region.
cplx expect(const DensityState& state, const LocalOperator& a);

/// |ρ(A·α^{iβ}B) − ρ(B·A)| for ρ the Gibbs state of h at β: the boundary
/// form of the thermal analyticity identity, which vanishes for Gibbs
/// states in finite dimension.
double kms_residual(const LocalOperator& h, double beta, const LocalOperator& a, const LocalOperator& b);

/// ρ(A·α^z(B)) on the closed strip 0 ≤ Im z ≤ β (reversed for β < 0);
/// throws OutsideStrip beyond it.
cplx strip_function(const LocalOperator& h, double beta, const LocalOperator& a, const LocalOperator& b, cplx z);

/// Tensor product over pairwise disjoint regions, factors arranged in
/// ascending site order.
DensityState product_state(const std::vector<DensityState>& states);

/// −tr(μ log μ − μ log ν) ≤ 0, with 0·log 0 = 0 on the kernel of μ.
/// Throws NonFaithfulReference when ν has a numerical kernel.
double relative_entropy(const DensityState& mu, const DensityState& nu);

/// (α^t)*ρ = e^{−iHt}·ρ·e^{iHt}.
DensityState evolve_state(const DensityState& state, const LocalOperator& h, double t);

/// ½‖ρ−ν‖₁.
double total_variation_distance(const DensityState& a, const DensityState& b);

/// e^{−β(H+P)}/Z: the equilibrium state of the perturbed generator.
DensityState perturbed_state_direct(const LocalOperator& h, double beta, const LocalOperator& p);

/// The same state through the imaginary-time expansion of the perturbed
/// cyclic vector, Ω_P = Σ_n (−1)^n ∫_{0≤s_n≤…≤s_1≤β/2}
/// (α^{is_n}P)···(α^{is_1}P)·Ω, truncated at `order` (cap 8) with nested
/// Gauss–Legendre quadrature. A validation path for the direct formula.
DensityState perturbed_state_series(const LocalOperator& h, double beta, const LocalOperator& p, int order,
                                    int quad_points);

}  // namespace qsm

#pragma once

#include <functional>
#include <optional>

#include "qsm/modular.hpp"

namespace qsm {

/// Small system + thermal reservoirs with the product reference state
/// σ = (normalized trace on S) ⊗_a gibbs(β_a·(H_a + B_a)), where H_a is
/// the Hamiltonian of the interaction restricted to reservoir a and B_a an
/// optional boundary term supported inside the reservoir.
struct NessSetup {
    Interaction interaction;
    ReservoirPartition partition;
    std::vector<std::optional<Interaction>> boundary_terms;  // one slot per reservoir
    DensityState reference_state;
    LocalOperator full_hamiltonian;  // H over the whole lattice

    NessSetup(Interaction interaction, ReservoirPartition partition,
              std::vector<std::optional<Interaction>> boundary_terms = {});
};

/// Generator of the decoupled reference dynamics, Σ_a β_a·(Φ_a + Ψ_a).
Interaction reference_dynamics_interaction(const NessSetup& setup);

/// Rate of energy transfer into reservoir a:
/// i[H_Λ − Σ_b H_{bΛ}, H_{aΛ}] on the finite lattice; self-adjoint.
LocalOperator reservoir_current(const NessSetup& setup, int reservoir);

/// Norm bound 2·|S|·λ^{-1}·e^λ·‖Φ‖_λ² on the current (reported, not
/// asserted, by the drivers).
double reservoir_current_bound(const NessSetup& setup, double lambda);

/// Σ_a β_a·ρ(i[H, H_{R_a}]).
double entropy_production(const DensityState& state, const NessSetup& setup);

/// Σ_j P_j·ρ·P_j over eigenprojections of h, eigenvalues grouped within
/// degeneracy_tol: the T→∞ Cesàro limit of the evolved state, exact in
/// finite dimension. Degenerate blocks use full block projectors.
DensityState dephase(const DensityState& state, const LocalOperator& h, double degeneracy_tol);

/// Trapezoidal average of σ(α^t A) over [0,T] with `samples` grid points.
cplx cesaro_average(const NessSetup& setup, const LocalOperator& a, double T, int samples);

struct BalanceReport {
    double lhs;       // ∫_0^T (σ∘α^t)(−δ_β(V)) dt, composite Simpson
    double rhs;       // −Ent(σ∘α^T | σ)
    double residual;  // |lhs − rhs|
};

/// The entropy balance between time-integrated production and relative
/// entropy of the evolved reference state. quad_points counts Simpson
/// subintervals on [0,T].
BalanceReport entropy_balance(const NessSetup& setup, double T, int quad_points);

/// −i[V, log σ] with V the surface term; coincides with
/// Σ_a β_a·(current a) when the boundary terms vanish.
LocalOperator delta_beta_v(const NessSetup& setup);

/// ‖(−i[V, log σ]) − Σ_a β_a·J_a‖: zero without boundary terms, the
/// boundary-commutator gap otherwise (reported, not asserted).
double delta_beta_current_gap(const NessSetup& setup);

struct KleinReport {
    double lhs;  // tr(φ(A)·U·A·U^{-1})
    double rhs;  // tr(φ(A)·A)
    bool ok;     // lhs ≤ rhs + 1e-12·scale
};

/// The trace inequality tr(φ(A)UAU^{-1}) ≤ tr(φ(A)A) for self-adjoint A,
/// unitary U and increasing φ.
KleinReport klein_check(const Matrix& a, const Matrix& u, const std::function<double(double)>& phi);

struct TrendRow {
    int family_index;
    double dephased_production;
    std::vector<double> T_values;
    std::vector<double> transient_average;  // (1/T)∫_0^T σ(α^t(−δ_β(V))) dt
};

/// Transient entropy production across a family of setups of growing
/// reservoir size; every average is nonnegative (each equals
/// −Ent(σ∘α^T|σ)/T), the size trend is emitted for inspection only.
std::vector<TrendRow> positivity_trend(const std::vector<NessSetup>& family, const std::vector<double>& T_grid,
                                       int quad_points_per_unit_time);

}  // namespace qsm

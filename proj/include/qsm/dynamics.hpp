#pragma once

#include "qsm/interaction.hpp"
#include "qsm/quadrature.hpp"

namespace qsm {

/// δ(A) = i·Σ_{X∩supp(A)≠∅} [Φ(X), A], on the union of supports. Symmetric
/// derivation: δ(A*) = δ(A)* and δ(AB) = δ(A)B + Aδ(B).
LocalOperator derivation(const Interaction& phi, const LocalOperator& a);

/// m-fold application of the derivation; m = 0 returns a.
LocalOperator iterate_derivation(const Interaction& phi, const LocalOperator& a, int m);

/// |t| must stay strictly below this for the evolution series to converge:
/// λ/(2‖Φ‖_λ), infinite for the empty interaction.
double convergence_radius(const Interaction& phi, double lambda);

struct SeriesEvolutionResult {
    LocalOperator value;
    int truncation_order;
    double certified_tail_bound;  // ‖A‖e^{λ|supp A|}·q^{M+1}/(1−q), q = 2|t|‖Φ‖_λ/λ
};

/// Partial sum Σ_{m≤M} t^m/m!·δ^m(A) truncated at the first order whose
/// geometric tail bound drops below tol. Throws OutsideConvergenceRadius
/// at or past |t| = λ/(2‖Φ‖_λ) and ToleranceUnreachable when more than
/// order_cap terms would be needed.
SeriesEvolutionResult evolve_series(const Interaction& phi, const LocalOperator& a, double t, double lambda,
                                    double tol, int order_cap = 200);

/// e^{izH}·A·e^{−izH} through the eigenbasis of H (entrywise
/// e^{iz(λ_j−λ_k)} scaling). Real z is Heisenberg evolution; z = iβ gives
/// the analytic continuation entering the KMS condition. A is embedded
/// into supp(H) first.
LocalOperator evolve_exact(const LocalOperator& h, const LocalOperator& a, cplx z);

/// ‖α^t_{Λ_last}(A) − α^t_{Λ_j}(A)‖ for an inclusion-ascending family of
/// regions, each containing supp(A): the finite-volume shadow of the
/// convergence of local dynamics.
std::vector<double> convergence_residual(const Interaction& phi, const LocalOperator& a, double t,
                                         const std::vector<Region>& regions);

/// Truncated time-ordered expansion of the interaction-picture cocycle
/// Γ_t = 1 + Σ_n i^n ∫_{0≤t_n≤…≤t_1≤t} (α^{t_n}P)···(α^{t_1}P) dt, with
/// nested Gauss–Legendre quadrature over the ordered simplex.
Matrix dyson_cocycle(const LocalOperator& h, const LocalOperator& p, double t, int order, int quad_points);

/// ‖Γ_t·Γ_t† − 1‖: how far the truncated cocycle is from unitary.
double cocycle_unitarity_defect(const Matrix& gamma);

/// Exact conjugation by e^{i(H+P)t}.
LocalOperator perturbed_evolve(const LocalOperator& h, const LocalOperator& p, const LocalOperator& a, double t);

/// Finite-time approximant α_P^{−t}(α^t(A)) of the interchange morphism;
/// no limit is taken (finite systems recur).
LocalOperator moller_approximant(const LocalOperator& h, const LocalOperator& p, const LocalOperator& a, double t);

/// ‖γ^{(t)}(α^s A) − α_P^s(γ^{(t)} A)‖ for a probe time s.
double moller_intertwining_defect(const LocalOperator& h, const LocalOperator& p, const LocalOperator& a, double t,
                                  double s);

}  // namespace qsm

#pragma once

#include <map>
#include <vector>

#include "qsm/local_operator.hpp"

namespace qsm {

/// Map from finite regions to self-adjoint terms. Immutable after
/// construction; Hamiltonians embed terms on demand.
class Interaction {
public:
    Interaction(Lattice lattice, std::map<Region, Matrix> terms);

    const Lattice& lattice() const { return lattice_; }
    const std::map<Region, Matrix>& terms() const { return terms_; }

private:
    Lattice lattice_;
    std::map<Region, Matrix> terms_;
};

/// Σ_{n≥0} e^{nλ} · max_x Σ_{X∋x, |X|=n+1} ‖Φ(X)‖, evaluated exactly over
/// the finite lattice.
double lambda_norm(const Interaction& phi, double lambda);

/// H_Φ(region) = Σ_{X⊆region} Φ(X), embedded into the region.
LocalOperator hamiltonian(const Interaction& phi, const Region& region);

/// Σ over terms crossing the boundary of the region (meeting it without
/// being contained), embedded into the union of their supports. Satisfies
/// H(L) = H(Λ) + W(Λ) + H(L\Λ).
LocalOperator boundary_energy(const Interaction& phi, const Region& region);

/// Interaction restricted to terms contained in the region.
Interaction restrict_interaction(const Interaction& phi, const Region& region);

/// Termwise scaling: X ↦ factor·Φ(X).
Interaction scale_interaction(const Interaction& phi, double factor);

/// Merge of term maps (overlapping regions summed).
Interaction merge_interactions(const Interaction& a, const Interaction& b);

/// Small system S plus disjoint reservoirs R_a, jointly covering the
/// lattice, with one inverse temperature per reservoir.
struct ReservoirPartition {
    Lattice lattice;
    Region small_system;
    std::vector<Region> reservoirs;
    std::vector<double> betas;

    ReservoirPartition(Lattice lattice, Region small_system, std::vector<Region> reservoirs,
                       std::vector<double> betas);

    int reservoir_count() const { return static_cast<int>(reservoirs.size()); }
};

/// V = Σ_{X∩S≠∅} Φ(X), embedded into the union of supports.
LocalOperator surface_term(const Interaction& phi, const ReservoirPartition& partition);

/// Σ_{X∩S≠∅} ‖Φ(X)‖e^{λ|X|}: the certified upper bound on the weighted
/// norm of V coming from the term decomposition (reported by the CLI
/// against card S·‖Φ‖_λ).
double surface_term_weight(const Interaction& phi, const ReservoirPartition& partition, double lambda);

/// True iff no term couples two reservoirs without meeting S.
bool check_a2(const Interaction& phi, const ReservoirPartition& partition);

/// Open chain on sites 1..n: Φ({x}) = h·σ_z, Φ({x,x+1}) = J·σ_x⊗σ_x.
Interaction build_ising_chain(int n, double coupling, double field);

}  // namespace qsm

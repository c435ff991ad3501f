#pragma once

#include <map>

#include "qsm/lattice.hpp"
#include "qsm/matrix.hpp"
#include "qsm/spectral.hpp"

namespace qsm {

/// An operator together with the region carrying it. The matrix dimension
/// is the product of the local dimensions over the region; the empty
/// region holds a 1×1 scalar.
struct LocalOperator {
    Lattice lattice;
    Region region;
    Matrix matrix;

    LocalOperator(Lattice lat, Region reg, Matrix mat);

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
    LocalOperator adjoint() const { return LocalOperator(lattice, region, matrix.adjoint()); }
};

LocalOperator identity_on(const Lattice& lattice, const Region& region);
LocalOperator zero_on(const Lattice& lattice, const Region& region);

/// op acting as itself on op.region and as identity on target\op.region,
/// tensor factors in ascending site order. Throws RegionNotContained
/// unless op.region ⊆ target ⊆ lattice.
LocalOperator embed(const LocalOperator& op, const Region& target);

/// π_target: normalized partial trace over op.region \ target; the result
/// lives on op.region ∩ target. Satisfies π(A) = A when A is already
/// supported in target, is norm-nonincreasing, commutes with adjoints, and
/// π_X∘π_Y = π_{X∩Y}. Throws RegionNotContained when target has sites
/// outside the lattice.
LocalOperator conditional_expectation(const LocalOperator& op, const Region& target);

/// Canonical decomposition op = Σ_X Â_X with
/// Â_X = Σ_{Y⊆X} (−1)^{|X\Y|} π_Y(op): each component is strictly
/// supported on X (its normalized trace over any single site of X
/// vanishes) and the sum reconstructs op exactly. Components that vanish
/// numerically are dropped.
std::map<Region, LocalOperator> local_decompose(const LocalOperator& op);

/// Σ_X ‖Â_X‖·e^{λ·|X|} over the canonical decomposition: an upper bound
/// for the weighted norm defined as an infimum over all decompositions.
/// Dominates the operator norm for every λ ≥ 0 and is monotone in λ.
double lambda_weight(const LocalOperator& op, double lambda);

// Arithmetic joins operands into their common (union) region first.
LocalOperator operator+(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator-(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator*(const LocalOperator& a, const LocalOperator& b);
LocalOperator operator*(cplx alpha, LocalOperator a);
LocalOperator commutator(const LocalOperator& a, const LocalOperator& b);

/// Both operands embedded into the union of their regions.
std::pair<LocalOperator, LocalOperator> on_common_region(const LocalOperator& a, const LocalOperator& b);

double operator_norm(const LocalOperator& op);

}  // namespace qsm

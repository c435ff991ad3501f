#include "qsm/interaction.hpp"

#include <algorithm>
#include <cmath>

namespace qsm {

Interaction::Interaction(Lattice lattice, std::map<Region, Matrix> terms)
    : lattice_(std::move(lattice)), terms_(std::move(terms)) {
    for (const auto& [region, matrix] : terms_) {
        if (region.empty()) throw ValidationError("interaction term on the empty region");
        if (!lattice_.contains(region)) throw RegionNotContained("interaction term outside the lattice");
        if (!matrix.square() || static_cast<std::size_t>(matrix.rows()) != lattice_.dimension(region))
            throw DimensionMismatch("interaction term dimension does not match its region");
        if (hermiticity_defect(matrix) > 1e-12 * std::max(frobenius_norm(matrix), 1.0))
            throw NotHermitian("interaction terms must be self-adjoint");
    }
}

double lambda_norm(const Interaction& phi, double lambda) {
    if (lambda < 0.0) throw DomainError("lambda must be nonnegative");
    double best = 0.0;
    for (int site : phi.lattice().sites()) {
        double site_sum = 0.0;
        for (const auto& [region, matrix] : phi.terms()) {
            if (!region.contains(site)) continue;
            site_sum += std::exp(lambda * static_cast<double>(region.size() - 1)) * operator_norm(matrix);
        }
        best = std::max(best, site_sum);
    }
    return best;
}

LocalOperator hamiltonian(const Interaction& phi, const Region& region) {
    LocalOperator h = zero_on(phi.lattice(), region);
    for (const auto& [term_region, matrix] : phi.terms()) {
        if (!region.contains(term_region)) continue;
        h.matrix += embed(LocalOperator(phi.lattice(), term_region, matrix), region).matrix;
    }
    return h;
}

LocalOperator boundary_energy(const Interaction& phi, const Region& region) {
    Region support;
    std::vector<const std::pair<const Region, Matrix>*> crossing;
    for (const auto& term : phi.terms()) {
        const Region& x = term.first;
        if (region_intersection(x, region).empty() || region.contains(x)) continue;
        crossing.push_back(&term);
        support = region_union(support, x);
    }
    LocalOperator w = zero_on(phi.lattice(), support);
    for (const auto* term : crossing)
        w.matrix += embed(LocalOperator(phi.lattice(), term->first, term->second), support).matrix;
    return w;
}

Interaction restrict_interaction(const Interaction& phi, const Region& region) {
    std::map<Region, Matrix> terms;
    for (const auto& [x, matrix] : phi.terms())
        if (region.contains(x)) terms.emplace(x, matrix);
    return Interaction(phi.lattice(), std::move(terms));
}

Interaction scale_interaction(const Interaction& phi, double factor) {
    std::map<Region, Matrix> terms;
    for (const auto& [x, matrix] : phi.terms()) terms.emplace(x, cplx{factor, 0.0} * matrix);
    return Interaction(phi.lattice(), std::move(terms));
}

Interaction merge_interactions(const Interaction& a, const Interaction& b) {
    if (a.lattice() != b.lattice()) throw ValidationError("interactions live on different lattices");
    std::map<Region, Matrix> terms = a.terms();
    for (const auto& [x, matrix] : b.terms()) {
        auto [it, inserted] = terms.emplace(x, matrix);
        if (!inserted) it->second += matrix;
    }
    return Interaction(a.lattice(), std::move(terms));
}

ReservoirPartition::ReservoirPartition(Lattice lattice_in, Region small_system_in,
                                       std::vector<Region> reservoirs_in, std::vector<double> betas_in)
    : lattice(std::move(lattice_in)),
      small_system(std::move(small_system_in)),
      reservoirs(std::move(reservoirs_in)),
      betas(std::move(betas_in)) {
    if (small_system.empty()) throw ValidationError("small system must be nonempty");
    if (reservoirs.empty()) throw ValidationError("at least one reservoir required");
    if (betas.size() != reservoirs.size()) throw ValidationError("one beta per reservoir required");
    for (double b : betas)
        if (!(b > 0.0)) throw ValidationError("reservoir temperatures must be positive");

    Region covered = small_system;
    std::size_t count = small_system.size();
    for (const Region& r : reservoirs) {
        if (r.empty()) throw ValidationError("reservoirs must be nonempty");
        covered = region_union(covered, r);
        count += r.size();
    }
    if (count != covered.size()) throw OverlappingRegions("partition blocks must be pairwise disjoint");
    if (covered != lattice.full_region()) throw ValidationError("partition must cover the lattice");
}

LocalOperator surface_term(const Interaction& phi, const ReservoirPartition& partition) {
    if (phi.lattice() != partition.lattice) throw ValidationError("partition lattice differs from interaction");
    Region support;
    for (const auto& [x, matrix] : phi.terms())
        if (!region_intersection(x, partition.small_system).empty()) support = region_union(support, x);
    LocalOperator v = zero_on(phi.lattice(), support);
    for (const auto& [x, matrix] : phi.terms())
        if (!region_intersection(x, partition.small_system).empty())
            v.matrix += embed(LocalOperator(phi.lattice(), x, matrix), support).matrix;
    return v;
}

double surface_term_weight(const Interaction& phi, const ReservoirPartition& partition, double lambda) {
    double w = 0.0;
    for (const auto& [x, matrix] : phi.terms())
        if (!region_intersection(x, partition.small_system).empty())
            w += operator_norm(matrix) * std::exp(lambda * static_cast<double>(x.size()));
    return w;
}

bool check_a2(const Interaction& phi, const ReservoirPartition& partition) {
    for (const auto& [x, matrix] : phi.terms()) {
        if (!region_intersection(x, partition.small_system).empty()) continue;
        int touched = 0;
        for (const Region& r : partition.reservoirs)
            if (!region_intersection(x, r).empty()) ++touched;
        if (touched >= 2) return false;
    }
    return true;
}

Interaction build_ising_chain(int n, double coupling, double field) {
    if (n < 1) throw InvalidSize("chain needs at least one site");
    Lattice lattice = Lattice::uniform(n, 2, 1);
    std::map<Region, Matrix> terms;
    for (int x = 1; x <= n; ++x) terms.emplace(Region::single(x), cplx{field, 0.0} * pauli_z());
    for (int x = 1; x < n; ++x)
        terms.emplace(Region({x, x + 1}), cplx{coupling, 0.0} * tensor_product(pauli_x(), pauli_x()));
    return Interaction(std::move(lattice), std::move(terms));
}

}  // namespace qsm

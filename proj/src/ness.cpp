#include "qsm/ness.hpp"

#include <cmath>

namespace qsm {

namespace {

// H_{aΛ} + B_{aΛ}: reservoir Hamiltonian with its boundary term.
LocalOperator reservoir_hamiltonian(const Interaction& phi, const Region& reservoir,
                                    const std::optional<Interaction>& boundary) {
    LocalOperator h = hamiltonian(restrict_interaction(phi, reservoir), reservoir);
    if (boundary) h.matrix += hamiltonian(restrict_interaction(*boundary, reservoir), reservoir).matrix;
    return h;
}

DensityState build_reference_state(const Interaction& phi, const ReservoirPartition& partition,
                                   const std::vector<std::optional<Interaction>>& boundary_terms) {
    std::vector<DensityState> factors;
    factors.push_back(DensityState::maximally_mixed(phi.lattice(), partition.small_system));
    for (int a = 0; a < partition.reservoir_count(); ++a) {
        const LocalOperator h = reservoir_hamiltonian(phi, partition.reservoirs[a], boundary_terms[a]);
        factors.push_back(gibbs_state(h, partition.betas[a]));
    }
    return product_state(factors);
}

}  // namespace

NessSetup::NessSetup(Interaction interaction_in, ReservoirPartition partition_in,
                     std::vector<std::optional<Interaction>> boundary_terms_in)
    : interaction(std::move(interaction_in)),
      partition(std::move(partition_in)),
      boundary_terms(std::move(boundary_terms_in)),
      reference_state(DensityState::maximally_mixed(interaction.lattice(), interaction.lattice().full_region())),
      full_hamiltonian(hamiltonian(interaction, interaction.lattice().full_region())) {
    if (interaction.lattice() != partition.lattice)
        throw ValidationError("partition lattice differs from the interaction lattice");
    if (boundary_terms.empty()) boundary_terms.resize(partition.reservoirs.size());
    if (boundary_terms.size() != partition.reservoirs.size())
        throw ValidationError("one boundary-term slot per reservoir required");
    for (int a = 0; a < partition.reservoir_count(); ++a) {
        if (!boundary_terms[a]) continue;
        for (const auto& [x, m] : boundary_terms[a]->terms())
            if (!partition.reservoirs[a].contains(x))
                throw ValidationError("boundary terms must be supported inside their reservoir");
    }
    if (!check_a2(interaction, partition))
        throw ValidationError("interaction couples reservoirs directly (assumption A2 fails)");
    reference_state = build_reference_state(interaction, partition, boundary_terms);
}

Interaction reference_dynamics_interaction(const NessSetup& setup) {
    Interaction result(setup.interaction.lattice(), {});
    for (int a = 0; a < setup.partition.reservoir_count(); ++a) {
        Interaction part =
            scale_interaction(restrict_interaction(setup.interaction, setup.partition.reservoirs[a]),
                              setup.partition.betas[a]);
        if (setup.boundary_terms[a])
            part = merge_interactions(
                part, scale_interaction(restrict_interaction(*setup.boundary_terms[a], setup.partition.reservoirs[a]),
                                        setup.partition.betas[a]));
        result = merge_interactions(result, part);
    }
    return result;
}

LocalOperator reservoir_current(const NessSetup& setup, int reservoir) {
    if (reservoir < 0 || reservoir >= setup.partition.reservoir_count())
        throw BadReservoirIndex("reservoir index out of range");
    const Region full = setup.interaction.lattice().full_region();

    // H_Λ − Σ_b H_{bΛ} is the surface part; its commutator with H_{aΛ}
    // stays in the finite algebra.
    LocalOperator rest = setup.full_hamiltonian;
    for (int b = 0; b < setup.partition.reservoir_count(); ++b) {
        const LocalOperator hb =
            hamiltonian(restrict_interaction(setup.interaction, setup.partition.reservoirs[b]),
                        setup.partition.reservoirs[b]);
        rest.matrix -= embed(hb, full).matrix;
    }
    const LocalOperator ha = hamiltonian(restrict_interaction(setup.interaction, setup.partition.reservoirs[reservoir]),
                                         setup.partition.reservoirs[reservoir]);
    LocalOperator current = commutator(rest, embed(ha, full));
    current.matrix *= cplx{0.0, 1.0};
    current.matrix = hermitian_part(current.matrix);  // i[K,H_a] is exactly self-adjoint; scrub roundoff
    return current;
}

double reservoir_current_bound(const NessSetup& setup, double lambda) {
    const double nrm = lambda_norm(setup.interaction, lambda);
    return 2.0 * static_cast<double>(setup.partition.small_system.size()) / lambda * std::exp(lambda) * nrm * nrm;
}

double entropy_production(const DensityState& state, const NessSetup& setup) {
    double total = 0.0;
    for (int a = 0; a < setup.partition.reservoir_count(); ++a) {
        const cplx v = expect(state, reservoir_current(setup, a));
        total += setup.partition.betas[a] * v.real();
    }
    return total;
}

DensityState dephase(const DensityState& state, const LocalOperator& h, double degeneracy_tol) {
    if (!h.region.contains(state.region()))
        throw RegionNotContained("state region must lie inside the generator support");
    if (hermiticity_defect(h.matrix) > kHermTol * std::max(frobenius_norm(h.matrix), 1.0))
        throw NotHermitian("dephasing generator must be self-adjoint");
    const SpectralDecomposition sd = spectral_decompose(h.matrix);
    const int n = h.matrix.rows();

    // Group eigenvalues within the tolerance; consecutive gaps decide blocks.
    std::vector<int> group(n, 0);
    for (int i = 1; i < n; ++i)
        group[i] = (sd.eigenvalues[i] - sd.eigenvalues[i - 1] <= degeneracy_tol) ? group[i - 1] : group[i - 1] + 1;

    Matrix tilde = sd.basis.adjoint() * embed(state.as_operator(), h.region).matrix * sd.basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (group[i] != group[j]) tilde(i, j) = 0.0;
    return DensityState(state.lattice(), h.region, sd.basis * tilde * sd.basis.adjoint());
}

cplx cesaro_average(const NessSetup& setup, const LocalOperator& a, double T, int samples) {
    if (!(T > 0.0)) throw DomainError("averaging time must be positive");
    if (samples < 2) throw DomainError("at least two samples required");

    // σ(α^t A) = Σ_{jk} σ̃(k,j)·Ã(j,k)·e^{it(λ_j−λ_k)} in the eigenbasis:
    // one decomposition serves every sample.
    const SpectralDecomposition sd = spectral_decompose(setup.full_hamiltonian.matrix);
    const Region full = setup.full_hamiltonian.region;
    const Matrix sigma_t = sd.basis.adjoint() * embed(setup.reference_state.as_operator(), full).matrix * sd.basis;
    const Matrix a_t = sd.basis.adjoint() * embed(a, full).matrix * sd.basis;
    const int n = a_t.rows();

    const double h = T / (samples - 1);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
        const double t = i * h;
        cplx v{0.0, 0.0};
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                v += sigma_t(k, j) * a_t(j, k) * std::exp(cplx{0.0, t * (sd.eigenvalues[j] - sd.eigenvalues[k])});
        const double w = (i == 0 || i == samples - 1) ? 0.5 : 1.0;
        acc += w * v;
    }
    return acc * cplx{h / T, 0.0};
}

LocalOperator delta_beta_v(const NessSetup& setup) {
    if (!setup.reference_state.faithful()) throw NonFaithfulState("reference state must be faithful");
    const Region full = setup.interaction.lattice().full_region();
    const Matrix log_sigma = mat_log(embed(setup.reference_state.as_operator(), full).matrix);
    const LocalOperator v = embed(surface_term(setup.interaction, setup.partition), full);
    Matrix obs = cplx{0.0, -1.0} * commutator(v.matrix, log_sigma);
    obs = hermitian_part(obs);
    return LocalOperator(setup.interaction.lattice(), full, std::move(obs));
}

double delta_beta_current_gap(const NessSetup& setup) {
    LocalOperator expected = delta_beta_v(setup);
    Matrix sum(expected.matrix.rows(), expected.matrix.cols());
    const Region full = setup.interaction.lattice().full_region();
    for (int a = 0; a < setup.partition.reservoir_count(); ++a)
        sum += cplx{setup.partition.betas[a], 0.0} * embed(reservoir_current(setup, a), full).matrix;
    return operator_norm(expected.matrix - sum);
}

BalanceReport entropy_balance(const NessSetup& setup, double T, int quad_points) {
    if (!setup.reference_state.faithful()) throw NonFaithfulState("reference state must be faithful");
    const LocalOperator observable = delta_beta_v(setup);
    const SpectralDecomposition sd = spectral_decompose(setup.full_hamiltonian.matrix);
    const Matrix sigma = embed(setup.reference_state.as_operator(), setup.full_hamiltonian.region).matrix;

    auto integrand = [&](double t) {
        // (σ∘α^t)(X) = tr(σ·e^{itH}Xe^{−itH}); evolve the state backwards
        // instead so one spectral decomposition serves the whole grid.
        Matrix ut = sd.apply_complex([&](double ev) { return std::exp(cplx{0.0, -t * ev}); });
        const Matrix evolved_state = ut * sigma * ut.adjoint();
        return trace_product(evolved_state, observable.matrix).real();
    };
    const double lhs = simpson_integral(T, quad_points, integrand);

    const DensityState evolved = evolve_state(setup.reference_state, setup.full_hamiltonian, T);
    const double rhs = -relative_entropy(evolved, setup.reference_state);
    return BalanceReport{lhs, rhs, std::abs(lhs - rhs)};
}

KleinReport klein_check(const Matrix& a, const Matrix& u, const std::function<double(double)>& phi) {
    if (hermiticity_defect(a) > kHermTol * std::max(frobenius_norm(a), 1.0))
        throw NotHermitian("Klein check needs a self-adjoint matrix");
    const Matrix uu = u * u.adjoint() - Matrix::identity(u.rows());
    if (frobenius_norm(uu) > 1e-10 * u.rows()) throw NotUnitary("Klein check needs a unitary conjugator");

    const Matrix phi_a = apply_spectral_function(a, phi);
    const Matrix conjugated = u * a * u.adjoint();
    const double lhs = trace_product(phi_a, conjugated).real();
    const double rhs = trace_product(phi_a, a).real();
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return KleinReport{lhs, rhs, lhs <= rhs + 1e-12 * scale};
}

std::vector<TrendRow> positivity_trend(const std::vector<NessSetup>& family, const std::vector<double>& T_grid,
                                       int quad_points_per_unit_time) {
    std::vector<TrendRow> table;
    int index = 0;
    for (const NessSetup& setup : family) {
        TrendRow row;
        row.family_index = index++;
        const DensityState ness =
            dephase(setup.reference_state, setup.full_hamiltonian,
                    1e-9 * std::max(operator_norm(setup.full_hamiltonian.matrix), 1.0));
        row.dephased_production = entropy_production(ness, setup);
        for (double T : T_grid) {
            const int points = std::max(2, static_cast<int>(std::ceil(quad_points_per_unit_time * T)));
            const BalanceReport balance = entropy_balance(setup, T, points);
            row.T_values.push_back(T);
            row.transient_average.push_back(balance.lhs / T);
        }
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace qsm

#include "qsm/dynamics.hpp"

#include <cmath>
#include <limits>

namespace qsm {

namespace {

Matrix heisenberg(const SpectralDecomposition& sd, const Matrix& a, cplx z) {
    const int n = sd.basis.rows();
    Matrix tilde = sd.basis.adjoint() * a * sd.basis;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            tilde(j, k) *= std::exp(cplx{0.0, 1.0} * z * (sd.eigenvalues[j] - sd.eigenvalues[k]));
    return sd.basis * tilde * sd.basis.adjoint();
}

void require_hermitian(const Matrix& m, const char* what) {
    if (hermiticity_defect(m) > kHermTol * std::max(frobenius_norm(m), 1.0))
        throw NotHermitian(std::string(what) + " must be self-adjoint");
}

}  // namespace

LocalOperator derivation(const Interaction& phi, const LocalOperator& a) {
    if (phi.lattice() != a.lattice) throw ValidationError("observable lattice differs from interaction");
    Region support = a.region;
    for (const auto& [x, term] : phi.terms())
        if (!region_intersection(x, a.region).empty()) support = region_union(support, x);

    LocalOperator out = zero_on(phi.lattice(), support);
    const Matrix ea = embed(a, support).matrix;
    for (const auto& [x, term] : phi.terms()) {
        if (region_intersection(x, a.region).empty()) continue;
        const Matrix et = embed(LocalOperator(phi.lattice(), x, term), support).matrix;
        out.matrix += cplx{0.0, 1.0} * commutator(et, ea);
    }
    return out;
}

LocalOperator iterate_derivation(const Interaction& phi, const LocalOperator& a, int m) {
    if (m < 0) throw DomainError("derivation order must be nonnegative");
    LocalOperator out = a;
    for (int i = 0; i < m; ++i) out = derivation(phi, out);
    return out;
}

double convergence_radius(const Interaction& phi, double lambda) {
    if (lambda <= 0.0) throw DomainError("lambda must be positive for the series radius");
    const double nrm = lambda_norm(phi, lambda);
    if (nrm == 0.0) return std::numeric_limits<double>::infinity();
    return lambda / (2.0 * nrm);
}

SeriesEvolutionResult evolve_series(const Interaction& phi, const LocalOperator& a, double t, double lambda,
                                    double tol, int order_cap) {
    if (tol <= 0.0) throw DomainError("series tolerance must be positive");
    const double radius = convergence_radius(phi, lambda);
    if (!(std::abs(t) < radius)) throw OutsideConvergenceRadius("|t| must be strictly below λ/(2‖Φ‖_λ)");

    const double q = (radius == std::numeric_limits<double>::infinity()) ? 0.0 : std::abs(t) / radius;
    const double prefactor =
        operator_norm(a.matrix) * std::exp(lambda * static_cast<double>(a.region.size()));
    auto tail = [&](int order) {
        if (q == 0.0) return 0.0;
        return prefactor * std::pow(q, order + 1) / (1.0 - q);
    };

    int target = 0;
    while (tail(target) > tol) {
        if (++target > order_cap)
            throw ToleranceUnreachable("series order cap exceeded before the tail bound met the tolerance");
    }

    // s_m = t^m/m!·δ^m(A) built by s_m = (t/m)·δ(s_{m-1}) so entries stay
    // O(q^m) instead of the factorially growing raw iterates.
    LocalOperator sum = a;
    LocalOperator term = a;
    for (int m = 1; m <= target; ++m) {
        term = cplx{t / m, 0.0} * derivation(phi, term);
        sum = sum + term;
    }
    return SeriesEvolutionResult{std::move(sum), target, tail(target)};
}

LocalOperator evolve_exact(const LocalOperator& h, const LocalOperator& a, cplx z) {
    require_hermitian(h.matrix, "evolution generator");
    if (!h.region.contains(a.region))
        throw RegionNotContained("observable support must lie inside the generator support");
    const SpectralDecomposition sd = spectral_decompose(h.matrix);
    const Matrix ea = embed(a, h.region).matrix;
    return LocalOperator(h.lattice, h.region, heisenberg(sd, ea, z));
}

std::vector<double> convergence_residual(const Interaction& phi, const LocalOperator& a, double t,
                                         const std::vector<Region>& regions) {
    if (regions.empty()) return {};
    for (std::size_t j = 0; j < regions.size(); ++j) {
        if (!regions[j].contains(a.region)) throw RegionNotContained("every region must contain supp(A)");
        if (j > 0 && !regions[j].contains(regions[j - 1]))
            throw ValidationError("regions must ascend by inclusion");
    }
    std::vector<LocalOperator> evolved;
    evolved.reserve(regions.size());
    for (const Region& reg : regions) evolved.push_back(evolve_exact(hamiltonian(phi, reg), a, t));

    const Region& last = regions.back();
    const Matrix ref = embed(evolved.back(), last).matrix;
    std::vector<double> residuals;
    residuals.reserve(regions.size() - 1);
    for (std::size_t j = 0; j + 1 < regions.size(); ++j)
        residuals.push_back(operator_norm(ref - embed(evolved[j], last).matrix));
    return residuals;
}

Matrix dyson_cocycle(const LocalOperator& h, const LocalOperator& p, double t, int order, int quad_points) {
    if (order < 0) throw DomainError("cocycle order must be nonnegative");
    auto [eh, ep] = on_common_region(h, p);
    require_hermitian(eh.matrix, "free Hamiltonian");
    require_hermitian(ep.matrix, "perturbation");

    const int dim = eh.matrix.rows();
    Matrix gamma = Matrix::identity(dim);
    if (t == 0.0 || frobenius_norm(ep.matrix) == 0.0) return gamma;

    const SpectralDecomposition sd = spectral_decompose(eh.matrix);
    const Matrix tilde_p = sd.basis.adjoint() * ep.matrix * sd.basis;
    auto evolved_p = [&](double s) {
        // α^s(P) in the eigenbasis of H: entrywise phases, no sandwich.
        Matrix m = tilde_p;
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                m(j, k) *= std::exp(cplx{0.0, s * (sd.eigenvalues[j] - sd.eigenvalues[k])});
        return m;
    };
    for (int n = 1; n <= order; ++n) {
        // (α^{t_n}P)···(α^{t_1}P) with times outermost-first: the innermost
        // (smallest) time multiplies from the left.
        auto f = [&](const std::vector<double>& times) {
            Matrix m = evolved_p(times.back());
            for (int j = static_cast<int>(times.size()) - 2; j >= 0; --j) m = m * evolved_p(times[j]);
            return m;
        };
        cplx in{1.0, 0.0};
        for (int k = 0; k < n; ++k) in *= cplx{0.0, 1.0};
        gamma += in * (sd.basis * simplex_integral(n, quad_points, t, dim, f) * sd.basis.adjoint());
    }
    return gamma;
}

double cocycle_unitarity_defect(const Matrix& gamma) {
    return operator_norm(gamma * gamma.adjoint() - Matrix::identity(gamma.rows()));
}

LocalOperator perturbed_evolve(const LocalOperator& h, const LocalOperator& p, const LocalOperator& a, double t) {
    auto [eh, ep] = on_common_region(h, p);
    require_hermitian(ep.matrix, "perturbation");
    return evolve_exact(LocalOperator(eh.lattice, eh.region, eh.matrix + ep.matrix), a, cplx{t, 0.0});
}

LocalOperator moller_approximant(const LocalOperator& h, const LocalOperator& p, const LocalOperator& a, double t) {
    auto [eh, ep] = on_common_region(h, p);
    const LocalOperator forward = evolve_exact(eh, a, cplx{t, 0.0});
    return perturbed_evolve(eh, ep, forward, -t);
}

double moller_intertwining_defect(const LocalOperator& h, const LocalOperator& p, const LocalOperator& a, double t,
                                  double s) {
    auto [eh, ep] = on_common_region(h, p);
    const LocalOperator lhs = moller_approximant(eh, ep, evolve_exact(eh, a, cplx{s, 0.0}), t);
    const LocalOperator rhs = perturbed_evolve(eh, ep, moller_approximant(eh, ep, a, t), s);
    return operator_norm(lhs.matrix - rhs.matrix);
}

}  // namespace qsm

#include "qsm/states.hpp"

#include <cmath>

namespace qsm {

namespace {

constexpr double kFaithfulEps = 1e-12;

void require_hermitian(const Matrix& m, const char* what) {
    if (hermiticity_defect(m) > kHermTol * std::max(frobenius_norm(m), 1.0))
        throw NotHermitian(std::string(what) + " must be self-adjoint");
}

}  // namespace

DensityState::DensityState(Lattice lattice, Region region, Matrix matrix)
    : lattice_(std::move(lattice)), region_(std::move(region)), matrix_(std::move(matrix)) {
    if (!lattice_.contains(region_)) throw RegionNotContained("state region not contained in lattice");
    if (static_cast<std::size_t>(matrix_.rows()) != lattice_.dimension(region_) || !matrix_.square())
        throw DimensionMismatch("density matrix dimension does not match region");
    const double scale = std::max(frobenius_norm(matrix_), 1.0);
    if (hermiticity_defect(matrix_) > 1e-12 * scale) throw NotHermitian("density matrix must be self-adjoint");
    if (std::abs(matrix_.trace() - cplx{1.0, 0.0}) > 1e-12 * scale)
        throw ValidationError("density matrix must have unit trace");
    SpectralDecomposition sd = spectral_decompose(matrix_);
    min_eigenvalue_ = sd.eigenvalues.front();
    if (min_eigenvalue_ < -1e-12) throw ValidationError("density matrix must be positive semidefinite");
    faithful_ = min_eigenvalue_ > kFaithfulEps;
}

DensityState DensityState::maximally_mixed(const Lattice& lattice, const Region& region) {
    const int d = static_cast<int>(lattice.dimension(region));
    Matrix m = Matrix::identity(d);
    m *= cplx{1.0 / d, 0.0};
    return DensityState(lattice, region, std::move(m));
}

DensityState gibbs_state(const LocalOperator& h, double beta) {
    require_hermitian(h.matrix, "Gibbs generator");
    SpectralDecomposition sd = spectral_decompose(h.matrix);
    // Shift by the extremal eigenvalue so the weights never overflow.
    const double shift = beta >= 0.0 ? sd.eigenvalues.front() : sd.eigenvalues.back();
    std::vector<cplx> w(sd.eigenvalues.size());
    double z = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double v = std::exp(-beta * (sd.eigenvalues[i] - shift));
        w[i] = v;
        z += v;
    }
    for (auto& v : w) v /= z;
    return DensityState(h.lattice, h.region, sd.basis * Matrix::diagonal(w) * sd.basis.adjoint());
}

cplx expect(const DensityState& state, const LocalOperator& a) {
    if (state.lattice() != a.lattice) throw ValidationError("state and observable live on different lattices");
    if (!state.region().contains(a.region))
        throw RegionNotContained("observable support must lie inside the state region");
    return trace_product(state.matrix(), embed(a, state.region()).matrix);
}

double kms_residual(const LocalOperator& h, double beta, const LocalOperator& a, const LocalOperator& b) {
    const DensityState rho = gibbs_state(h, beta);
    const LocalOperator ea = embed(a, h.region);
    const LocalOperator analytic = evolve_exact(h, b, cplx{0.0, beta});
    const cplx lhs = expect(rho, ea * analytic);
    const cplx rhs = expect(rho, embed(b, h.region) * ea);
    return std::abs(lhs - rhs);
}

cplx strip_function(const LocalOperator& h, double beta, const LocalOperator& a, const LocalOperator& b, cplx z) {
    const double y = z.imag();
    const bool inside = beta >= 0.0 ? (y >= -1e-14 && y <= beta + 1e-14) : (y >= beta - 1e-14 && y <= 1e-14);
    if (!inside) throw OutsideStrip("Im z must lie between 0 and beta");
    const DensityState rho = gibbs_state(h, beta);
    return expect(rho, embed(a, h.region) * evolve_exact(h, b, z));
}

DensityState product_state(const std::vector<DensityState>& states) {
    if (states.empty()) throw ValidationError("product of zero states");
    const Lattice& lattice = states.front().lattice();
    Region support;
    std::size_t total = 0;
    for (const DensityState& s : states) {
        if (s.lattice() != lattice) throw ValidationError("product factors live on different lattices");
        support = region_union(support, s.region());
        total += s.region().size();
    }
    if (total != support.size()) throw OverlappingRegions("product factors must have disjoint regions");

    // Disjoint embedded factors commute; their product is the interleaved
    // tensor arrangement in sorted site order.
    Matrix m = Matrix::identity(static_cast<int>(lattice.dimension(support)));
    for (const DensityState& s : states) m = m * embed(s.as_operator(), support).matrix;
    return DensityState(lattice, support, std::move(m));
}

double relative_entropy(const DensityState& mu, const DensityState& nu) {
    if (mu.lattice() != nu.lattice() || mu.region() != nu.region())
        throw ValidationError("relative entropy needs states on a common region");
    if (!nu.faithful()) throw NonFaithfulReference("reference state must be faithful");

    SpectralDecomposition sd_mu = spectral_decompose(mu.matrix());
    double mu_log_mu = 0.0;
    for (double p : sd_mu.eigenvalues)
        if (p > 1e-15) mu_log_mu += p * std::log(p);

    const Matrix log_nu = mat_log(nu.matrix());
    const double mu_log_nu = trace_product(mu.matrix(), log_nu).real();
    return mu_log_nu - mu_log_mu;
}

DensityState evolve_state(const DensityState& state, const LocalOperator& h, double t) {
    if (!h.region.contains(state.region()))
        throw RegionNotContained("state region must lie inside the generator support");
    const LocalOperator evolved = evolve_exact(h, state.as_operator(), cplx{-t, 0.0});
    return DensityState(state.lattice(), evolved.region, evolved.matrix);
}

double total_variation_distance(const DensityState& a, const DensityState& b) {
    if (a.region() != b.region()) throw ValidationError("states live on different regions");
    return 0.5 * trace_norm(a.matrix() - b.matrix());
}

DensityState perturbed_state_direct(const LocalOperator& h, double beta, const LocalOperator& p) {
    auto [eh, ep] = on_common_region(h, p);
    require_hermitian(ep.matrix, "perturbation");
    return gibbs_state(LocalOperator(eh.lattice, eh.region, eh.matrix + ep.matrix), beta);
}

DensityState perturbed_state_series(const LocalOperator& h, double beta, const LocalOperator& p, int order,
                                    int quad_points) {
    if (order < 0) throw DomainError("series order must be nonnegative");
    if (order > 8) throw OrderTooHigh("perturbed-state series capped at order 8");
    auto [eh, ep] = on_common_region(h, p);
    require_hermitian(eh.matrix, "Gibbs generator");
    require_hermitian(ep.matrix, "perturbation");

    const DensityState rho = gibbs_state(eh, beta);
    const SpectralDecomposition sd = spectral_decompose(eh.matrix);
    const int dim = eh.matrix.rows();

    const Matrix tilde_p = sd.basis.adjoint() * ep.matrix * sd.basis;
    auto analytic_p = [&](double s) {
        // α^{is}(P) = e^{−sH}·P·e^{sH}, in the eigenbasis of H
        Matrix m = tilde_p;
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) m(j, k) *= std::exp(-s * (sd.eigenvalues[j] - sd.eigenvalues[k]));
        return m;
    };

    // Ω_P in the matrix realization of the cyclic space: vectors are n×n
    // matrices X with inner product tr(ρX†Y) and Ω = 1.
    Matrix omega_p = Matrix::identity(dim);
    for (int n = 1; n <= order; ++n) {
        auto f = [&](const std::vector<double>& times) {
            Matrix m = analytic_p(times.back());
            for (int j = static_cast<int>(times.size()) - 2; j >= 0; --j) m = m * analytic_p(times[j]);
            return m;
        };
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        omega_p += cplx{sign, 0.0} *
                   (sd.basis * simplex_integral(n, quad_points, beta / 2.0, dim, f) * sd.basis.adjoint());
    }

    // ρ_P(A) = (Ω_P, A·Ω_P)/(Ω_P,Ω_P) = tr((X ρ X†)A)/tr(X ρ X†).
    Matrix state = omega_p * rho.matrix() * omega_p.adjoint();
    const double z = state.trace().real();
    state *= cplx{1.0 / z, 0.0};
    state = hermitian_part(state);  // scrub quadrature roundoff
    return DensityState(eh.lattice, eh.region, std::move(state));
}

}  // namespace qsm

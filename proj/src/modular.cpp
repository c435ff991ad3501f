#include "qsm/modular.hpp"

#include <cmath>

namespace qsm {

namespace {

Matrix vec(const Matrix& x) {
    Matrix v(x.rows() * x.cols(), 1);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) v(i * x.cols() + j, 0) = x(i, j);
    return v;
}

Matrix unvec(const Matrix& v, int n) {
    Matrix x(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = v(i * n + j, 0);
    return x;
}

/// Orthonormal basis of the span of the given N×N matrices under the
/// Hilbert-Schmidt inner product (modified Gram-Schmidt with rank cut).
std::vector<Matrix> orthonormal_span(const std::vector<Matrix>& mats) {
    std::vector<Matrix> basis;
    for (const Matrix& m : mats) {
        Matrix r = m;
        for (const Matrix& b : basis) {
            const cplx c = hs_inner(b, r);
            r -= c * b;
        }
        // second pass stabilizes near-dependent inputs
        for (const Matrix& b : basis) {
            const cplx c = hs_inner(b, r);
            r -= c * b;
        }
        const double nrm = frobenius_norm(r);
        if (nrm > 1e-10 * std::max(1.0, frobenius_norm(m))) {
            r *= cplx{1.0 / nrm, 0.0};
            basis.push_back(std::move(r));
        }
    }
    return basis;
}

double span_membership_residual(const std::vector<Matrix>& onb, const Matrix& x) {
    Matrix r = x;
    for (const Matrix& b : onb) r -= hs_inner(b, x) * b;
    const double scale = std::max(frobenius_norm(x), 1e-30);
    return frobenius_norm(r) / scale;
}

std::vector<Matrix> matrix_units(int n) {
    std::vector<Matrix> units;
    units.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Matrix e(n, n);
            e(i, j) = 1.0;
            units.push_back(std::move(e));
        }
    return units;
}

Matrix power_of(const SpectralDecomposition& sd, double exponent) {
    return sd.apply([&](double x) { return std::pow(x, exponent); });
}

Matrix imaginary_power(const SpectralDecomposition& sd, double t) {
    // Δ^{it} = exp(it·log Δ), spectrally.
    return sd.apply_complex([&](double x) { return std::exp(cplx{0.0, t * std::log(x)}); });
}

}  // namespace

Matrix GnsRep::left_action(const Matrix& a) const {
    return to_coords * tensor_product(a, Matrix::identity(ambient_dim)) * from_coords;
}

Matrix GnsRep::vector_of(const Matrix& x) const {
    return to_coords * vec(x);
}

Matrix GnsRep::matrix_of(const Matrix& coords) const {
    return unvec(from_coords * coords, ambient_dim);
}

GnsRep gns_build(const DensityState& rho) {
    if (!rho.faithful()) throw NonFaithfulState("GNS construction requires a faithful state");
    const int n = rho.matrix().rows();
    const int nn = n * n;

    // Gram matrix of the matrix units E_ij under (A,B) = tr(ρA*B):
    // (E_ij, E_kl) = δ_ik·ρ(l,j), i.e. G = 1 ⊗ ρᵀ.
    Matrix gram(nn, nn);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) gram(i * n + j, i * n + l) = rho.matrix()(l, j);

    const SpectralDecomposition sd = spectral_decompose(gram);
    GnsRep rep;
    rep.ambient_dim = n;
    rep.rho = rho.matrix();
    rep.to_coords = power_of(sd, 0.5);
    rep.from_coords = power_of(sd, -0.5);
    rep.omega = rep.vector_of(Matrix::identity(n));
    rep.gram_basis.reserve(nn);
    for (int k = 0; k < nn; ++k) {
        Matrix col(nn, 1);
        for (int r = 0; r < nn; ++r) col(r, 0) = rep.from_coords(r, k);
        rep.gram_basis.push_back(unvec(col, n));
    }
    return rep;
}

std::vector<Matrix> commutant_basis(const std::vector<Matrix>& algebra_basis, int ambient_dim) {
    const int n = ambient_dim;
    const int nn = n * n;
    const Matrix id = Matrix::identity(n);

    // [A, B_k] = 0 in vectorized form: (B_k⊗1 − 1⊗B_kᵀ)·vec(A) = 0.
    // Null space of H = Σ K†K is the commutant.
    Matrix h(nn, nn);
    for (const Matrix& b : algebra_basis) {
        if (b.rows() != n || b.cols() != n) throw DimensionMismatch("algebra basis dimension mismatch");
        const Matrix k = tensor_product(b, id) - tensor_product(id, b.transpose());
        h += k.adjoint() * k;
    }
    const SpectralDecomposition sd = spectral_decompose(h);
    const double tol = 1e-10 * std::max(sd.eigenvalues.back(), 1.0);

    std::vector<Matrix> result;
    for (int k = 0; k < nn; ++k) {
        if (sd.eigenvalues[k] > tol) continue;
        Matrix col(nn, 1);
        for (int r = 0; r < nn; ++r) col(r, 0) = sd.basis(r, k);
        result.push_back(unvec(col, n));
    }
    return result;
}

TomitaData tomita_build(const GnsRep& rep) {
    const int n = rep.ambient_dim;
    const int nn = n * n;

    // S(AΩ) = A*Ω columnwise over the orthonormal basis: coordinates of
    // B_k are e_k, so column k of M_S is the coordinate vector of B_k*.
    Matrix s(nn, nn);
    for (int k = 0; k < nn; ++k) {
        const Matrix target = rep.vector_of(rep.gram_basis[k].adjoint());
        for (int r = 0; r < nn; ++r) s(r, k) = target(r, 0);
    }

    // Δ = S*S: antilinear composition gives the linear matrix Mᵀ·conj(M).
    Matrix delta = hermitian_part(s.transpose() * s.conjugate());
    const SpectralDecomposition sd = spectral_decompose(delta);
    if (sd.eigenvalues.front() <= 1e-12 * std::max(sd.eigenvalues.back(), 1.0))
        throw NonSeparatingVector("modular operator is numerically singular");

    // S = J·Δ^{1/2} as antilinears means M_S = M_J·conj(Δ^{1/2}).
    const Matrix j = s * power_of(sd, -0.5).conjugate();
    return TomitaData{std::move(s), std::move(delta), j};
}

TomitaReport verify_tomita_takesaki(const GnsRep& rep, const TomitaData& data, const std::vector<double>& t_grid) {
    const int n = rep.ambient_dim;
    const std::vector<Matrix> units = matrix_units(n);

    std::vector<Matrix> algebra;
    algebra.reserve(units.size());
    for (const Matrix& e : units) algebra.push_back(rep.left_action(e));
    const std::vector<Matrix> algebra_onb = orthonormal_span(algebra);
    const std::vector<Matrix> commutant = commutant_basis(algebra, n * n);
    const std::vector<Matrix> commutant_onb = orthonormal_span(commutant);

    const SpectralDecomposition sd = spectral_decompose(data.delta);
    const Matrix j_conj = data.j_matrix.conjugate();

    std::vector<double> jmj_res(algebra.size());
    for (std::size_t k = 0; k < algebra.size(); ++k) {
        // J·π(A)·J is linear with matrix M_J·conj(π(A))·conj(M_J).
        const Matrix jaj = data.j_matrix * algebra[k].conjugate() * j_conj;
        jmj_res[k] = span_membership_residual(commutant_onb, jaj);
    }

    TomitaReport report;
    for (double t : t_grid) {
        const Matrix dit = imaginary_power(sd, t);
        const Matrix dit_inv = imaginary_power(sd, -t);
        for (std::size_t k = 0; k < algebra.size(); ++k) {
            const Matrix flowed = dit * algebra[k] * dit_inv;
            const double flow_res = span_membership_residual(algebra_onb, flowed);
            report.rows.push_back(TomitaCheckRow{static_cast<int>(k), t, jmj_res[k], flow_res});
            report.max_commutant_residual = std::max(report.max_commutant_residual, jmj_res[k]);
            report.max_flow_residual = std::max(report.max_flow_residual, flow_res);
        }
    }
    return report;
}

double modular_condition_residual(const GnsRep& rep, const TomitaData& data, const Matrix& a, const Matrix& b) {
    const SpectralDecomposition sd = spectral_decompose(data.delta);
    const Matrix half = power_of(sd, 0.5);
    const Matrix va = half * rep.left_action(a) * rep.omega;
    const Matrix vb = half * rep.left_action(b) * rep.omega;
    const cplx lhs = hs_inner(va, vb);
    const Matrix wa = rep.left_action(b.adjoint()) * rep.omega;
    const Matrix wb = rep.left_action(a.adjoint()) * rep.omega;
    const cplx rhs = hs_inner(wa, wb);
    return std::abs(lhs - rhs);
}

ModularFlowReport modular_flow_match(const LocalOperator& h, double beta, const std::vector<double>& t_grid) {
    if (hermiticity_defect(h.matrix) > kHermTol * std::max(frobenius_norm(h.matrix), 1.0))
        throw NotHermitian("modular flow generator must be self-adjoint");
    const DensityState rho = gibbs_state(h, beta);
    const GnsRep rep = gns_build(rho);
    const TomitaData data = tomita_build(rep);
    const SpectralDecomposition sd = spectral_decompose(data.delta);

    const std::vector<Matrix> units = matrix_units(rep.ambient_dim);
    double residual[2] = {0.0, 0.0};  // index 0 → s=+1, 1 → s=−1
    for (double t : t_grid) {
        const Matrix dit = imaginary_power(sd, t);
        const Matrix dit_inv = imaginary_power(sd, -t);
        for (const Matrix& e : units) {
            const Matrix flowed = dit * rep.left_action(e) * dit_inv;
            for (int si = 0; si < 2; ++si) {
                const double s = si == 0 ? 1.0 : -1.0;
                const LocalOperator evolved =
                    evolve_exact(h, LocalOperator(h.lattice, h.region, e), cplx{s * beta * t, 0.0});
                const double r = operator_norm(flowed - rep.left_action(evolved.matrix));
                residual[si] = std::max(residual[si], r);
            }
        }
    }
    if (residual[0] <= residual[1]) return ModularFlowReport{+1, residual[0], residual[1]};
    return ModularFlowReport{-1, residual[1], residual[0]};
}

}  // namespace qsm

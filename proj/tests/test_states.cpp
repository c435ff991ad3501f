#include <cmath>
#include <random>

#include "doctest.h"
#include "qsm/states.hpp"

using namespace qsm;

namespace {

double mdiff(const Matrix& a, const Matrix& b) {
    return frobenius_norm(a - b);
}

LocalOperator random_hermitian_on(std::mt19937_64& rng, const Lattice& lat, const Region& reg) {
    const int d = static_cast<int>(lat.dimension(reg));
    return LocalOperator(lat, reg, random_hermitian(rng, d));
}

// eigenbasis double-sum for −tr(μ log μ − μ log ν)
double relative_entropy_oracle(const Matrix& mu, const Matrix& nu) {
    const SpectralDecomposition su = spectral_decompose(mu);
    const SpectralDecomposition sv = spectral_decompose(nu);
    const int n = mu.rows();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double p = su.eigenvalues[i];
        if (p <= 1e-15) continue;
        acc -= p * std::log(p);
        for (int j = 0; j < n; ++j) {
            cplx overlap{0.0, 0.0};
            for (int r = 0; r < n; ++r) overlap += std::conj(su.basis(r, i)) * sv.basis(r, j);
            acc += p * std::norm(overlap) * std::log(sv.eigenvalues[j]);
        }
    }
    return acc;
}

const Lattice one = Lattice::uniform(1);
const Lattice three = Lattice::uniform(3);

}  // namespace

TEST_CASE("Gibbs state: two-level closed form and limits") {
    const double h = 0.6, beta = 1.3;
    const LocalOperator gen(one, Region::single(1), cplx{h, 0.0} * pauli_z());
    const DensityState rho = gibbs_state(gen, beta);
    const double z = 2.0 * std::cosh(beta * h);
    CHECK(mdiff(rho.matrix(), Matrix::diagonal({std::exp(-beta * h) / z, std::exp(beta * h) / z})) < 1e-14);
    CHECK(expect(rho, LocalOperator(one, Region::single(1), pauli_z())).real() ==
          doctest::Approx(-std::tanh(beta * h)).epsilon(1e-12));
    CHECK(rho.faithful());

    const DensityState hot = gibbs_state(gen, 1e-8);
    CHECK(mdiff(hot.matrix(), cplx{0.5, 0.0} * Matrix::identity(2)) < 1e-8);

    const DensityState flat = gibbs_state(LocalOperator(one, Region::single(1), Matrix::zero(2, 2)), 2.0);
    CHECK(mdiff(flat.matrix(), cplx{0.5, 0.0} * Matrix::identity(2)) == 0.0);
}

TEST_CASE("expectations: normalization, closed form, positivity") {
    std::mt19937_64 rng(71);
    const LocalOperator gen(one, Region::single(1), pauli_z());
    const DensityState rho = gibbs_state(gen, 0.8);
    CHECK(expect(rho, identity_on(one, Region::single(1))).real() == doctest::Approx(1.0));

    for (int trial = 0; trial < 25; ++trial) {
        const Matrix a = random_matrix(rng, 2, 2);
        const LocalOperator asq(one, Region::single(1), a.adjoint() * a);
        CHECK(expect(rho, asq).real() >= -1e-12);
        CHECK(std::abs(expect(rho, LocalOperator(one, Region::single(1), hermitian_part(a))).imag()) < 1e-12);
    }
}

TEST_CASE("thermal boundary identity: ladder pair, identity slot, random instances") {
    const LocalOperator h(one, Region::single(1), pauli_z());
    const double beta = 1.0;
    const LocalOperator sp(one, Region::single(1), pauli_plus());
    const LocalOperator sm(one, Region::single(1), pauli_minus());

    // both sides equal e^β/(2cosh β) here
    const DensityState rho = gibbs_state(h, beta);
    const double want = std::exp(beta) / (2.0 * std::cosh(beta));
    const cplx lhs = expect(rho, sp * evolve_exact(h, sm, cplx{0.0, beta}));
    CHECK(lhs.real() == doctest::Approx(want).epsilon(1e-12));
    CHECK(kms_residual(h, beta, sp, sm) <= 1e-12);

    CHECK(kms_residual(h, beta, identity_on(one, Region::single(1)), sm) <= 1e-13);

    std::mt19937_64 rng(73);
    const Interaction ising = build_ising_chain(3, 1.0, 0.5);
    const LocalOperator h3 = hamiltonian(ising, three.full_region());
    for (double b : {0.5, 1.0, 2.0}) {
        for (int trial = 0; trial < 5; ++trial) {
            const LocalOperator a(three, three.full_region(), random_matrix(rng, 8, 8));
            const LocalOperator bb(three, three.full_region(), random_matrix(rng, 8, 8));
            const double scale = operator_norm(a.matrix) * operator_norm(bb.matrix) *
                                 std::exp(b * operator_norm(h3.matrix));
            CHECK(kms_residual(h3, b, a, bb) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("thermal state is stationary") {
    std::mt19937_64 rng(79);
    const Interaction ising = build_ising_chain(3, 0.7, 0.4);
    const LocalOperator h3 = hamiltonian(ising, three.full_region());
    const DensityState rho = gibbs_state(h3, 1.2);
    for (double t : {0.3, -1.7, 4.0}) {
        const LocalOperator a(three, Region({1, 2}), random_matrix(rng, 4, 4));
        const cplx moved = expect(rho, evolve_exact(h3, a, cplx{t, 0.0}));
        const cplx still = expect(rho, a);
        CHECK(std::abs(moved - still) <= 1e-11 * std::max(1.0, std::abs(still)));
    }
}

TEST_CASE("strip function: boundary values, interior bound, strip guard") {
    const LocalOperator h(one, Region::single(1), pauli_z());
    const double beta = 1.1;
    std::mt19937_64 rng(83);
    const LocalOperator a(one, Region::single(1), random_matrix(rng, 2, 2));
    const LocalOperator b(one, Region::single(1), random_matrix(rng, 2, 2));
    const DensityState rho = gibbs_state(h, beta);

    CHECK(std::abs(strip_function(h, beta, a, b, cplx{0.0, 0.0}) - expect(rho, a * b)) < 1e-13);
    CHECK(std::abs(strip_function(h, beta, a, b, cplx{0.0, beta}) - expect(rho, b * a)) <= 1e-12);

    const double bound = operator_norm(a.matrix) * operator_norm(b.matrix);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const cplx z{-2.0 + 4.0 * i / 19.0, beta * j / 19.0};
            CHECK(std::abs(strip_function(h, beta, a, b, z)) <= bound + 1e-10);
        }

    CHECK_THROWS_AS(strip_function(h, beta, a, b, cplx{0.0, beta + 0.1}), OutsideStrip);
    CHECK_THROWS_AS(strip_function(h, beta, a, b, cplx{0.0, -0.1}), OutsideStrip);
}

TEST_CASE("product states: singleton, mixed, Boltzmann weights, overlap guard") {
    const DensityState mixed1 = DensityState::maximally_mixed(three, Region::single(1));
    const DensityState alone = product_state({mixed1});
    CHECK(mdiff(alone.matrix(), mixed1.matrix()) == 0.0);

    const DensityState mixed2 = DensityState::maximally_mixed(three, Region::single(2));
    const DensityState both = product_state({mixed1, mixed2});
    CHECK(mdiff(both.matrix(), cplx{0.25, 0.0} * Matrix::identity(4)) == 0.0);

    const double b1 = 0.9, b2 = 1.7;
    const DensityState g1 = gibbs_state(LocalOperator(three, Region::single(1), pauli_z()), b1);
    const DensityState g2 = gibbs_state(LocalOperator(three, Region::single(3), pauli_z()), b2);
    const DensityState prod = product_state({g1, g2});
    const double z1 = 2.0 * std::cosh(b1), z2 = 2.0 * std::cosh(b2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double wi = std::exp(-b1 * (i == 0 ? 1.0 : -1.0)) / z1;
            const double wj = std::exp(-b2 * (j == 0 ? 1.0 : -1.0)) / z2;
            CHECK(std::abs(prod.matrix()(i * 2 + j, i * 2 + j) - cplx{wi * wj, 0.0}) < 1e-14);
        }

    CHECK_THROWS_AS(product_state({mixed1, mixed1}), OverlappingRegions);
}

TEST_CASE("product of thermal states matches the joint thermal state of the sum") {
    const double b1 = 0.8, b2 = 1.5;
    const Lattice two = Lattice::uniform(2);
    const DensityState g1 = gibbs_state(LocalOperator(two, Region::single(1), pauli_z()), b1);
    const DensityState g2 = gibbs_state(LocalOperator(two, Region::single(2), pauli_z()), b2);
    const DensityState prod = product_state({g1, g2});

    const LocalOperator joint = cplx{b1, 0.0} * LocalOperator(two, Region::single(1), pauli_z()) +
                                cplx{b2, 0.0} * LocalOperator(two, Region::single(2), pauli_z());
    const DensityState direct = gibbs_state(joint, 1.0);
    CHECK(total_variation_distance(prod, direct) <= 1e-12);
}

TEST_CASE("relative entropy: zero at equality, hand value, spectral oracle, sign") {
    const DensityState mixed = DensityState::maximally_mixed(one, Region::single(1));
    CHECK(std::abs(relative_entropy(mixed, mixed)) <= 1e-12);

    const DensityState pure(one, Region::single(1), Matrix::diagonal({1.0, 0.0}));
    CHECK(relative_entropy(pure, mixed) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));

    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityState mu = gibbs_state(random_hermitian_on(rng, one, Region::single(1)), 0.7);
        const DensityState nu = gibbs_state(random_hermitian_on(rng, one, Region::single(1)), 1.4);
        const double val = relative_entropy(mu, nu);
        CHECK(val <= 1e-12);
        CHECK(val == doctest::Approx(relative_entropy_oracle(mu.matrix(), nu.matrix())).epsilon(1e-10));
        if (total_variation_distance(mu, nu) > 1e-8) CHECK(val < 0.0);
    }

    CHECK_THROWS_AS(relative_entropy(mixed, pure), NonFaithfulReference);
}

TEST_CASE("perturbed state: degenerate cases and the series cross-check") {
    const LocalOperator h(one, Region::single(1), pauli_z());
    const double beta = 1.0;
    const LocalOperator zero(one, Region::single(1), Matrix::zero(2, 2));
    CHECK(total_variation_distance(perturbed_state_direct(h, beta, zero), gibbs_state(h, beta)) <= 1e-14);
    CHECK(total_variation_distance(perturbed_state_series(h, beta, zero, 4, 12), gibbs_state(h, beta)) <= 1e-14);
    CHECK(total_variation_distance(perturbed_state_series(h, beta, zero, 0, 12), gibbs_state(h, beta)) <= 1e-14);

    // commuting perturbation multiplies Boltzmann weights
    const LocalOperator pz(one, Region::single(1), cplx{0.5, 0.0} * pauli_z());
    const DensityState shifted = perturbed_state_direct(h, beta, pz);
    const double z = std::exp(-beta * 1.5) + std::exp(beta * 1.5);
    CHECK(mdiff(shifted.matrix(), Matrix::diagonal({std::exp(-beta * 1.5) / z, std::exp(beta * 1.5) / z})) < 1e-13);

    const LocalOperator px(one, Region::single(1), cplx{0.05, 0.0} * pauli_x());
    const DensityState direct = perturbed_state_direct(h, beta, px);
    const DensityState series = perturbed_state_series(h, beta, px, 4, 16);
    CHECK(total_variation_distance(series, direct) <= 1e-5);

    CHECK_THROWS_AS(perturbed_state_series(h, beta, px, 9, 8), OrderTooHigh);
}

TEST_CASE("state evolution is dual to observable evolution") {
    std::mt19937_64 rng(97);
    const Interaction ising = build_ising_chain(3, 1.0, 0.5);
    const LocalOperator h3 = hamiltonian(ising, three.full_region());
    const DensityState bumped(three, three.full_region(),
                              gibbs_state(random_hermitian_on(rng, three, three.full_region()), 0.6).matrix());
    for (double t : {0.4, -0.9}) {
        const LocalOperator a(three, Region({2, 3}), random_matrix(rng, 4, 4));
        const cplx via_state = expect(evolve_state(bumped, h3, t), a);
        const cplx via_obs = expect(bumped, evolve_exact(h3, a, cplx{t, 0.0}));
        CHECK(std::abs(via_state - via_obs) < 1e-12 * std::max(1.0, std::abs(via_obs)));
    }
}

TEST_CASE("density state validation") {
    CHECK_THROWS_AS(DensityState(one, Region::single(1), pauli_z()), ValidationError);  // trace 0
    CHECK_THROWS_AS(DensityState(one, Region::single(1), pauli_plus()), NotHermitian);
    CHECK_THROWS_AS(DensityState(one, Region::single(1), Matrix::diagonal({1.5, -0.5})), ValidationError);
    CHECK(!DensityState(one, Region::single(1), Matrix::diagonal({1.0, 0.0})).faithful());
}

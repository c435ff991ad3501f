#pragma once

#include <functional>
#include <vector>

#include "qsm/matrix.hpp"

namespace qsm {

/// Gauss–Legendre rule mapped to [0,1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int points);

/// ∫_{0≤t_n≤…≤t_1≤T} f(t_1,…,t_n) dt over the ordered simplex by the chain
/// substitution t_j = t_{j-1}·u_j with one Gauss–Legendre rule per axis.
/// f receives the times outermost-first and returns a dim×dim matrix.
/// Negative T integrates over the reversed simplex with orientation.
Matrix simplex_integral(int n, int points, double T, int dim,
                        const std::function<Matrix(const std::vector<double>&)>& f);

/// Composite Simpson on [0,T] with `intervals` subintervals (rounded up to
/// even). Scalar integrand.
double simpson_integral(double T, int intervals, const std::function<double(double)>& f);

}  // namespace qsm

#include "qsm/quadrature.hpp"

#include <cmath>

#include "qsm/errors.hpp"

namespace qsm {

GaussLegendre gauss_legendre(int points) {
    if (points < 1) throw DomainError("quadrature needs at least one point");
    // Newton on P_n over [-1,1], then map to [0,1].
    const int n = points;
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? x : p1;
            double pn1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pn1) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = 0.5 * (1.0 + x);
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // already includes the [0,1] scaling
    }
    return rule;
}

Matrix simplex_integral(int n, int points, double T, int dim,
                        const std::function<Matrix(const std::vector<double>&)>& f) {
    if (n < 1) throw DomainError("simplex dimension must be positive");
    const GaussLegendre rule = gauss_legendre(points);

    Matrix acc(dim, dim);
    std::vector<int> idx(n, 0);
    std::vector<double> times(n);
    for (;;) {
        // Jacobian of the chain substitution is Π_j t_{j-1} with t_0 = T.
        double weight = 1.0;
        double prev = T;
        for (int j = 0; j < n; ++j) {
            weight *= rule.weights[idx[j]] * prev;
            times[j] = prev * rule.nodes[idx[j]];
            prev = times[j];
        }
        acc += cplx{weight, 0.0} * f(times);

        int j = n - 1;
        while (j >= 0 && ++idx[j] == points) idx[j--] = 0;
        if (j < 0) break;
    }
    return acc;
}

double simpson_integral(double T, int intervals, const std::function<double(double)>& f) {
    if (intervals < 2) intervals = 2;
    if (intervals % 2) ++intervals;
    const double h = T / intervals;
    double s = f(0.0) + f(T);
    for (int i = 1; i < intervals; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

}  // namespace qsm

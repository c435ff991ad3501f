#include "qsm/local_operator.hpp"

#include <algorithm>
#include <cmath>

namespace qsm {

LocalOperator::LocalOperator(Lattice lat, Region reg, Matrix mat)
    : lattice(std::move(lat)), region(std::move(reg)), matrix(std::move(mat)) {
    if (!lattice.contains(region)) throw RegionNotContained("operator region not contained in lattice");
    const std::size_t want = lattice.dimension(region);
    if (!matrix.square() || static_cast<std::size_t>(matrix.rows()) != want)
        throw DimensionMismatch("matrix dimension does not match region dimension");
    if (!matrix.finite()) throw DomainError("operator entries must be finite");
}

LocalOperator identity_on(const Lattice& lattice, const Region& region) {
    return LocalOperator(lattice, region, Matrix::identity(static_cast<int>(lattice.dimension(region))));
}

LocalOperator zero_on(const Lattice& lattice, const Region& region) {
    const int d = static_cast<int>(lattice.dimension(region));
    return LocalOperator(lattice, region, Matrix::zero(d, d));
}

namespace {

// Mixed-radix helpers over a sorted site list.
std::vector<int> region_dims(const Lattice& lat, const Region& r) {
    std::vector<int> dims;
    dims.reserve(r.size());
    for (int s : r.sites()) dims.push_back(lat.local_dim(s));
    return dims;
}

std::vector<long> strides_of(const std::vector<int>& dims) {
    std::vector<long> st(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) st[i] = st[i + 1] * dims[i + 1];
    return st;
}

}  // namespace

LocalOperator embed(const LocalOperator& op, const Region& target) {
    if (!op.lattice.contains(target)) throw RegionNotContained("embedding target not contained in lattice");
    if (!target.contains(op.region)) throw RegionNotContained("embedding target must contain the operator region");
    if (target == op.region) return op;

    const std::vector<int> tdims = region_dims(op.lattice, target);
    const std::vector<long> tstrides = strides_of(tdims);
    const long tdim = static_cast<long>(op.lattice.dimension(target));
    const long odim = static_cast<long>(op.dim());

    // Positions of the operator's sites and of the identity sites in target.
    std::vector<int> op_pos, id_pos;
    for (std::size_t k = 0; k < target.sites().size(); ++k) {
        if (op.region.contains(target.sites()[k]))
            op_pos.push_back(static_cast<int>(k));
        else
            id_pos.push_back(static_cast<int>(k));
    }

    // Offsets of every operator multi-index and identity multi-index.
    auto offsets = [&](const std::vector<int>& pos) {
        long count = 1;
        for (int p : pos) count *= tdims[p];
        std::vector<long> off(count);
        std::vector<int> digit(pos.size(), 0);
        for (long c = 0; c < count; ++c) {
            long o = 0;
            for (std::size_t i = 0; i < pos.size(); ++i) o += digit[i] * tstrides[pos[i]];
            off[c] = o;
            for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
                if (++digit[i] < tdims[pos[i]]) break;
                digit[i] = 0;
            }
        }
        return off;
    };
    const std::vector<long> op_off = offsets(op_pos);
    const std::vector<long> id_off = offsets(id_pos);

    Matrix out(static_cast<int>(tdim), static_cast<int>(tdim));
    for (long i = 0; i < odim; ++i)
        for (long j = 0; j < odim; ++j) {
            const cplx v = op.matrix(static_cast<int>(i), static_cast<int>(j));
            if (v == cplx{0.0, 0.0}) continue;
            for (long r : id_off)
                out(static_cast<int>(op_off[i] + r), static_cast<int>(op_off[j] + r)) = v;
        }
    return LocalOperator(op.lattice, target, std::move(out));
}

LocalOperator conditional_expectation(const LocalOperator& op, const Region& target) {
    if (!op.lattice.contains(target)) throw RegionNotContained("target region not contained in lattice");
    const Region kept = region_intersection(op.region, target);
    const Region traced = region_difference(op.region, target);
    if (traced.empty()) return op;

    const std::vector<int> dims = region_dims(op.lattice, op.region);
    std::vector<int> keep_idx;
    for (std::size_t k = 0; k < op.region.sites().size(); ++k)
        if (kept.contains(op.region.sites()[k])) keep_idx.push_back(static_cast<int>(k));

    Matrix reduced = partial_trace(op.matrix, dims, keep_idx);
    const double traced_dim = static_cast<double>(op.lattice.dimension(traced));
    reduced *= cplx{1.0 / traced_dim, 0.0};
    return LocalOperator(op.lattice, kept, std::move(reduced));
}

std::map<Region, LocalOperator> local_decompose(const LocalOperator& op) {
    const auto& sites = op.region.sites();
    const int n = static_cast<int>(sites.size());
    const unsigned total = 1u << n;

    auto subset_region = [&](unsigned mask) {
        std::vector<int> s;
        for (int b = 0; b < n; ++b)
            if (mask & (1u << b)) s.push_back(sites[b]);
        return Region(std::move(s));
    };

    // π_Y(op) for every subset Y, embedded back into the full region so the
    // alternating sums below are plain matrix sums.
    std::vector<Matrix> pi(total);
    for (unsigned mask = 0; mask < total; ++mask)
        pi[mask] = embed(conditional_expectation(op, subset_region(mask)), op.region).matrix;

    const double drop = 1e-14 * std::max(frobenius_norm(op.matrix), 1.0);
    std::map<Region, LocalOperator> components;
    for (unsigned x = 0; x < total; ++x) {
        Matrix acc(op.matrix.rows(), op.matrix.cols());
        const int card_x = __builtin_popcount(x);
        // Σ_{Y⊆X} (−1)^{|X\Y|} π_Y(op), iterating submasks of x.
        unsigned y = x;
        for (;;) {
            const double sign = ((card_x - __builtin_popcount(y)) % 2 == 0) ? 1.0 : -1.0;
            acc += cplx{sign, 0.0} * pi[y];
            if (y == 0) break;
            y = (y - 1) & x;
        }
        if (frobenius_norm(acc) <= drop) continue;
        Region rx = subset_region(x);
        components.emplace(rx, conditional_expectation(LocalOperator(op.lattice, op.region, std::move(acc)), rx));
    }
    return components;
}

double lambda_weight(const LocalOperator& op, double lambda) {
    if (lambda < 0.0) throw DomainError("lambda must be nonnegative");
    double w = 0.0;
    for (const auto& [region, component] : local_decompose(op))
        w += operator_norm(component.matrix) * std::exp(lambda * static_cast<double>(region.size()));
    return w;
}

std::pair<LocalOperator, LocalOperator> on_common_region(const LocalOperator& a, const LocalOperator& b) {
    if (a.lattice != b.lattice) throw DimensionMismatch("operators live on different lattices");
    const Region u = region_union(a.region, b.region);
    return {embed(a, u), embed(b, u)};
}

LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
    auto [ea, eb] = on_common_region(a, b);
    return LocalOperator(ea.lattice, ea.region, ea.matrix + eb.matrix);
}

LocalOperator operator-(const LocalOperator& a, const LocalOperator& b) {
    auto [ea, eb] = on_common_region(a, b);
    return LocalOperator(ea.lattice, ea.region, ea.matrix - eb.matrix);
}

LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
    auto [ea, eb] = on_common_region(a, b);
    return LocalOperator(ea.lattice, ea.region, ea.matrix * eb.matrix);
}

LocalOperator operator*(cplx alpha, LocalOperator a) {
    a.matrix *= alpha;
    return a;
}

LocalOperator commutator(const LocalOperator& a, const LocalOperator& b) {
    auto [ea, eb] = on_common_region(a, b);
    return LocalOperator(ea.lattice, ea.region, commutator(ea.matrix, eb.matrix));
}

double operator_norm(const LocalOperator& op) {
    return operator_norm(op.matrix);
}

}  // namespace qsm

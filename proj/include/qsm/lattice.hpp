#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "qsm/errors.hpp"

namespace qsm {

/// Sorted duplicate-free set of site identifiers.
class Region {
public:
    Region() = default;
    explicit Region(std::vector<int> sites);

    static Region single(int site) { return Region({site}); }

    const std::vector<int>& sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }
    bool contains(int site) const;
    bool contains(const Region& other) const;  // other ⊆ this

    friend Region region_union(const Region& a, const Region& b);
    friend Region region_intersection(const Region& a, const Region& b);
    friend Region region_difference(const Region& a, const Region& b);

    bool operator==(const Region&) const = default;
    auto operator<=>(const Region&) const = default;

private:
    std::vector<int> sites_;
};

Region region_union(const Region& a, const Region& b);
Region region_intersection(const Region& a, const Region& b);
Region region_difference(const Region& a, const Region& b);

/// Finite site set with one local Hilbert-space dimension per site.
class Lattice {
public:
    Lattice() = default;
    Lattice(std::vector<int> sites, std::vector<int> local_dims);

    /// n sites labelled first_site..first_site+n−1, all of one dimension.
    static Lattice uniform(int n_sites, int local_dim = 2, int first_site = 1);

    const std::vector<int>& sites() const { return sites_; }
    int site_count() const { return static_cast<int>(sites_.size()); }
    bool contains(int site) const;
    bool contains(const Region& region) const;
    int local_dim(int site) const;

    Region full_region() const { return Region(sites_); }

    /// Product of local dimensions over the region (1 for the empty region).
    std::size_t dimension(const Region& region) const;

    bool operator==(const Lattice&) const = default;

private:
    std::vector<int> sites_;
    std::vector<int> dims_;
};

}  // namespace qsm

#include "qsm/lattice.hpp"

#include <algorithm>
#include <string>

namespace qsm {

Region::Region(std::vector<int> sites) : sites_(std::move(sites)) {
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

bool Region::contains(int site) const {
    return std::binary_search(sites_.begin(), sites_.end(), site);
}

bool Region::contains(const Region& other) const {
    return std::includes(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end());
}

Region region_union(const Region& a, const Region& b) {
    Region r;
    std::set_union(a.sites_.begin(), a.sites_.end(), b.sites_.begin(), b.sites_.end(), std::back_inserter(r.sites_));
    return r;
}

Region region_intersection(const Region& a, const Region& b) {
    Region r;
    std::set_intersection(a.sites_.begin(), a.sites_.end(), b.sites_.begin(), b.sites_.end(),
                          std::back_inserter(r.sites_));
    return r;
}

Region region_difference(const Region& a, const Region& b) {
    Region r;
    std::set_difference(a.sites_.begin(), a.sites_.end(), b.sites_.begin(), b.sites_.end(),
                        std::back_inserter(r.sites_));
    return r;
}

Lattice::Lattice(std::vector<int> sites, std::vector<int> local_dims)
    : sites_(std::move(sites)), dims_(std::move(local_dims)) {
    if (sites_.empty()) throw InvalidSize("lattice needs at least one site");
    if (sites_.size() != dims_.size()) throw InvalidSize("one local dimension per site required");
    for (std::size_t i = 1; i < sites_.size(); ++i)
        if (sites_[i] <= sites_[i - 1]) throw InvalidSize("site identifiers must be strictly increasing");
    for (int d : dims_)
        if (d < 2) throw InvalidSize("local dimensions must be at least 2");
}

Lattice Lattice::uniform(int n_sites, int local_dim, int first_site) {
    if (n_sites < 1) throw InvalidSize("lattice needs at least one site");
    std::vector<int> sites(n_sites), dims(n_sites, local_dim);
    for (int i = 0; i < n_sites; ++i) sites[i] = first_site + i;
    return Lattice(std::move(sites), std::move(dims));
}

bool Lattice::contains(int site) const {
    return std::binary_search(sites_.begin(), sites_.end(), site);
}

bool Lattice::contains(const Region& region) const {
    return std::includes(sites_.begin(), sites_.end(), region.sites().begin(), region.sites().end());
}

int Lattice::local_dim(int site) const {
    auto it = std::lower_bound(sites_.begin(), sites_.end(), site);
    if (it == sites_.end() || *it != site) throw RegionNotContained("site " + std::to_string(site) + " not in lattice");
    return dims_[static_cast<std::size_t>(it - sites_.begin())];
}

std::size_t Lattice::dimension(const Region& region) const {
    std::size_t d = 1;
    for (int s : region.sites()) d *= static_cast<std::size_t>(local_dim(s));
    return d;
}

}  // namespace qsm

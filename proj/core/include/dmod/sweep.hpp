#ifndef DMOD_SWEEP_HPP
#define DMOD_SWEEP_HPP

#include "dmod/verifier.hpp"

namespace dmod {

// Fully serialized into every output header so runs are reproducible.
struct RunConfig {
    uint64_t p = 2;
    unsigned m_max = 3;
    unsigned n_cap = 84;
    uint64_t seed = 0;
    unsigned jobs = 1;
    std::string catalog_path; // empty: built-in default catalog
    std::string cache_path;   // empty: in-memory only
    std::string format = "table";
    std::string header_line() const;
};

// one CSV row per entry:
// name,p,e,r,c,d,a,j,s_eq5,gamma_0..gamma_mmax,n,verdict
// per-entry failures are recorded in the row and the sweep continues
std::string run_sweep(const RunConfig& cfg, const Catalog& cat, PointCountCache* cache);

// invariants of a single entry (a-number, slopes, j-number, s from slopes)
struct InvariantsOut {
    std::string name;
    unsigned e = 1, r = 0, c = 0, d = 0, m_work = 0;
    unsigned a = 0, j = 0;
    std::vector<Rat> slopes;
    long long s_eq5 = 0;
};
InvariantsOut compute_invariants(uint64_t p, const CatalogEntry& entry, unsigned m_max);

} // namespace dmod

#endif

#include "dmod/sweep.hpp"

#include <sstream>

namespace dmod {

std::string RunConfig::header_line() const {
    std::ostringstream os;
    os << "# p=" << p << " m_max=" << m_max << " n_cap=" << n_cap << " seed=" << seed
       << " jobs=" << jobs << " catalog=" << (catalog_path.empty() ? "default" : catalog_path)
       << " cache=" << (cache_path.empty() ? "memory" : cache_path) << " format=" << format;
    return os.str();
}

InvariantsOut compute_invariants(uint64_t p, const CatalogEntry& entry, unsigned m_max) {
    BuiltEntry be = build_entry(p, entry, m_max);
    InvariantsOut out;
    out.name = entry.name;
    out.e = be.D.e;
    out.r = be.D.r;
    out.c = be.D.c;
    out.d = be.D.d;
    out.m_work = be.D.m_work;
    out.a = a_number(be.D);
    out.j = j_number(be.D.c, be.D.d);
    out.slopes = newton_slopes(be.D);
    out.s_eq5 = s_height(slope_data_from_multiset(out.slopes), be.D.c, be.D.d);
    return out;
}

std::string run_sweep(const RunConfig& cfg, const Catalog& cat, PointCountCache* cache) {
    std::ostringstream os;
    os << cfg.header_line() << "\n";
    os << "name,p,e,r,c,d,a,j,s_eq5";
    for (unsigned m = 0; m <= cfg.m_max; ++m) os << ",gamma_" << m;
    os << ",n,verdict\n";

    std::vector<size_t> idx(cat.entries.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto rows = parallel_map(
        idx,
        [&](size_t i) -> std::string {
            const CatalogEntry& entry = cat.entries[i];
            std::ostringstream row;
            row << entry.name << "," << cat.p;
            try {
                InvariantsOut inv = compute_invariants(cat.p, entry, cfg.m_max);
                row << "," << inv.e << "," << inv.r << "," << inv.c << "," << inv.d << ","
                    << inv.a << "," << inv.j << "," << inv.s_eq5;
                BuiltEntry be = build_entry(cat.p, entry, cfg.m_max);
                ExtractionConfig xcfg;
                xcfg.n_cap = cfg.n_cap;
                CentralizingSequence seq =
                    be.constraint.is_full()
                        ? gamma_sequence(be.D, cfg.m_max, be.constraint, xcfg, cache)
                        : relative_suite(be.D, be.constraint, cfg.m_max, xcfg, cache);
                for (unsigned m = 0; m <= cfg.m_max; ++m) row << "," << seq.g[m];
                std::string verdict = "ok";
                if (seq.n)
                    row << "," << *seq.n;
                else
                    row << ",na";
                if (be.constraint.is_full() && seq.n) {
                    if (seq.g[*seq.n] != inv.s_eq5) verdict = "mismatch_s";
                    if (entry.expect.n && *entry.expect.n != *seq.n) verdict = "mismatch_n";
                }
                if (entry.expect.s && *entry.expect.s != inv.s_eq5) verdict = "mismatch_s";
                if (entry.expect.a && *entry.expect.a != inv.a) verdict = "mismatch_a";
                row << "," << verdict;
            } catch (const Error& e) {
                std::string what = e.what();
                for (auto& ch : what)
                    if (ch == ',' || ch == ' ' || ch == '\n') ch = '_';
                // blanks for e,r,c,d,a,j,s_eq5, the gamma columns, and n
                for (unsigned k = 0; k < 8 + cfg.m_max + 1; ++k) row << ",";
                row << ",error_" << (what.size() > 40 ? what.substr(0, 40) : what);
            }
            return row.str();
        },
        cfg.jobs);
    for (const auto& r : rows) os << r << "\n";
    return os.str();
}

} // namespace dmod

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmod/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dmod::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

dmod::Catalog load_catalog(const dmod::RunConfig& cfg) {
    if (cfg.catalog_path.empty()) return dmod::default_catalog(cfg.p);
    return dmod::parse_catalog(read_file(cfg.catalog_path));
}

std::string rat_str(const dmod::Rat& r) { return r.str(); }

void print_invariants(const dmod::RunConfig& cfg, const dmod::Catalog& cat,
                      const std::string& only) {
    nlohmann::json jout = nlohmann::json::array();
    if (cfg.format != "json") std::cout << cfg.header_line() << "\n";
    if (cfg.format == "csv") std::cout << "name,p,e,r,c,d,a,j,s_eq5,m_work,slopes\n";
    for (const auto& entry : cat.entries) {
        if (!only.empty() && entry.name != only) continue;
        try {
            dmod::InvariantsOut inv = dmod::compute_invariants(cat.p, entry, cfg.m_max);
            if (cfg.format == "csv") {
                std::cout << inv.name << "," << cat.p << "," << inv.e << "," << inv.r << ","
                          << inv.c << "," << inv.d << "," << inv.a << "," << inv.j << ","
                          << inv.s_eq5 << "," << inv.m_work << ",";
                for (size_t i = 0; i < inv.slopes.size(); ++i)
                    std::cout << (i ? ";" : "") << inv.slopes[i].num << "/"
                              << inv.slopes[i].den;
                std::cout << "\n";
            } else if (cfg.format == "json") {
                nlohmann::json js;
                js["name"] = inv.name;
                js["p"] = cat.p;
                js["e"] = inv.e;
                js["r"] = inv.r;
                js["c"] = inv.c;
                js["d"] = inv.d;
                js["a"] = inv.a;
                js["j"] = inv.j;
                js["s_eq5"] = inv.s_eq5;
                js["m_work"] = inv.m_work;
                nlohmann::json sl = nlohmann::json::array();
                for (const auto& s : inv.slopes) sl.push_back({s.num, s.den});
                js["slopes"] = sl;
                jout.push_back(js);
            } else {
                std::cout << inv.name << ": r=" << inv.r << " (c,d)=(" << inv.c << "," << inv.d
                          << ") a=" << inv.a << " j=" << inv.j << " s_eq5=" << inv.s_eq5
                          << " slopes={";
                for (size_t i = 0; i < inv.slopes.size(); ++i)
                    std::cout << (i ? "," : "") << rat_str(inv.slopes[i]);
                std::cout << "} [precision m_work=" << inv.m_work << "]\n";
            }
        } catch (const dmod::Error& e) {
            if (cfg.format == "json")
                jout.push_back({{"name", entry.name}, {"error", e.what()}});
            else
                std::cout << entry.name << ": error: " << e.what() << "\n";
        }
    }
    if (cfg.format == "json") std::cout << jout.dump(2) << "\n";
}

int print_gamma(const dmod::RunConfig& cfg, const dmod::Catalog& cat, const std::string& only,
                dmod::PointCountCache* cache) {
    nlohmann::json jout = nlohmann::json::array();
    if (cfg.format != "json") std::cout << cfg.header_line() << "\n";
    for (const auto& entry : cat.entries) {
        if (!only.empty() && entry.name != only) continue;
        dmod::BuiltEntry be = dmod::build_entry(cat.p, entry, cfg.m_max);
        dmod::ExtractionConfig xcfg;
        xcfg.n_cap = cfg.n_cap;
        dmod::CentralizingSequence seq =
            be.constraint.is_full()
                ? dmod::gamma_sequence(be.D, cfg.m_max, be.constraint, xcfg, cache)
                : dmod::relative_suite(be.D, be.constraint, cfg.m_max, xcfg, cache);
        if (cfg.format == "json") {
            nlohmann::json js;
            js["name"] = entry.name;
            js["constraint"] = be.constraint.describe();
            js["gamma"] = seq.g;
            if (seq.n) js["n"] = *seq.n;
            nlohmann::json evs = nlohmann::json::array();
            for (const auto& ev : seq.evidence) {
                nlohmann::json pts = nlohmann::json::array();
                for (auto [N, lg] : ev.counts) pts.push_back({N, lg});
                evs.push_back(pts);
            }
            js["evidence"] = evs;
            jout.push_back(js);
            continue;
        }
        std::cout << entry.name << " [" << be.constraint.describe() << "]\n";
        for (unsigned m = 0; m <= cfg.m_max; ++m) {
            std::cout << "  gamma(" << m << ") = " << seq.g[m];
            if (m >= 1 && m < seq.evidence.size() && !seq.evidence[m].counts.empty()) {
                std::cout << "   evidence (N,log):";
                for (auto [N, lg] : seq.evidence[m].counts)
                    std::cout << " (" << N << "," << lg << ")";
            }
            std::cout << "\n";
        }
        if (seq.n)
            std::cout << "  plateau level n = " << *seq.n << "\n";
        else
            std::cout << "  plateau level: not derived for this constraint\n";
    }
    if (cfg.format == "json") std::cout << jout.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dieudonne module invariants over truncated Witt vectors"};
    app.require_subcommand(1);
    app.fallthrough();

    dmod::RunConfig cfg;
    app.add_option("--p", cfg.p, "prime for the built-in catalog")
        ->envname("DMOD_P");
    app.add_option("--m-max", cfg.m_max, "largest truncation level")->envname("DMOD_M_MAX");
    app.add_option("--n-cap", cfg.n_cap, "largest point-field degree")->envname("DMOD_N_CAP");
    app.add_option("--seed", cfg.seed, "seed for sampling-based checks")->envname("DMOD_SEED");
    app.add_option("--jobs", cfg.jobs, "parallel workers")->envname("DMOD_JOBS");
    app.add_option("--cache", cfg.cache_path, "point-count cache file")->envname("DMOD_CACHE");
    app.add_option("--format", cfg.format, "output format: table, csv, or json")
        ->envname("DMOD_FORMAT");
    app.add_option("--catalog", cfg.catalog_path, "catalog JSON (default: built-in)")
        ->envname("DMOD_CATALOG");

    std::string entry_name;
    auto* inv = app.add_subcommand("invariants", "a-number, slopes, j-number, s from slopes");
    inv->add_option("--entry", entry_name, "restrict to one entry");
    auto* gam = app.add_subcommand("gamma", "centralizing sequence with point-count evidence");
    gam->add_option("--entry", entry_name, "restrict to one entry");
    auto* swp = app.add_subcommand("sweep", "CSV over the whole catalog");
    auto* ver = app.add_subcommand("verify", "run the full check suite; exit 0 iff green");

    CLI11_PARSE(app, argc, argv);

    try {
        dmod::Catalog cat = load_catalog(cfg);
        dmod::PointCountCache memory_cache;
        dmod::PointCountCache* cache = &memory_cache;
        std::optional<dmod::PointCountCache> file_cache;
        if (!cfg.cache_path.empty()) {
            file_cache.emplace(cfg.cache_path);
            cache = &*file_cache;
        }

        if (inv->parsed()) {
            print_invariants(cfg, cat, entry_name);
            return 0;
        }
        if (gam->parsed()) return print_gamma(cfg, cat, entry_name, cache);
        if (swp->parsed()) {
            std::cout << dmod::run_sweep(cfg, cat, cache);
            return 0;
        }
        if (ver->parsed()) {
            dmod::VerifyOptions opt;
            opt.jobs = cfg.jobs;
            opt.seed = cfg.seed;
            opt.n_cap = cfg.n_cap;
            dmod::VerificationReport rep = dmod::verify_catalog(cat, opt, cache);
            if (cfg.format == "json")
                std::cout << rep.to_json() << "\n";
            else
                std::cout << cfg.header_line() << "\n" << rep.text();
            return rep.green() ? 0 : 1;
        }
    } catch (const dmod::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

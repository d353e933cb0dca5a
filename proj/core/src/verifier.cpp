#include "dmod/verifier.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "dmod/explog.hpp"

namespace dmod {

bool VerificationReport::green() const {
    for (const auto& c : checks)
        if (c.verdict == CheckRecord::Verdict::Fail ||
            c.verdict == CheckRecord::Verdict::Inconclusive)
            return false;
    return true;
}

unsigned VerificationReport::count(CheckRecord::Verdict v) const {
    unsigned n = 0;
    for (const auto& c : checks) n += c.verdict == v;
    return n;
}

namespace {

const char* verdict_name(CheckRecord::Verdict v) {
    switch (v) {
        case CheckRecord::Verdict::Pass: return "pass";
        case CheckRecord::Verdict::Fail: return "FAIL";
        case CheckRecord::Verdict::Inconclusive: return "INCONCLUSIVE";
        case CheckRecord::Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

std::string seq_str(const CentralizingSequence& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.g.size(); ++i) out += (i ? "," : "") + std::to_string(s.g[i]);
    return out + ")";
}

} // namespace

std::string VerificationReport::text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << "[" << verdict_name(c.verdict) << "] " << c.entry << " " << c.id << ": "
           << c.statement;
        if (!c.evidence.empty()) os << " | " << c.evidence;
        os << "\n";
    }
    os << "summary: " << count(CheckRecord::Verdict::Pass) << " pass, "
       << count(CheckRecord::Verdict::Fail) << " fail, "
       << count(CheckRecord::Verdict::Inconclusive) << " inconclusive, "
       << count(CheckRecord::Verdict::NotApplicable) << " not applicable -> "
       << (green() ? "GREEN" : "RED") << "\n";
    return os.str();
}

std::string VerificationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"entry", c.entry},
                       {"id", c.id},
                       {"statement", c.statement},
                       {"verdict", verdict_name(c.verdict)},
                       {"evidence", c.evidence}});
    nlohmann::json j{{"checks", arr}, {"green", green()}};
    return j.dump(2);
}

namespace {

class EntryChecker {
  public:
    EntryChecker(uint64_t p, const CatalogEntry& entry, const VerifyOptions& opt,
                 PointCountCache* cache, unsigned sections)
        : p_(p), entry_(entry), opt_(opt), cache_(cache), sections_(sections) {
        cfg_.n_cap = opt.n_cap;
    }

    VerificationReport run() {
        try {
            run_inner();
        } catch (const ExtractionError& e) {
            add("engine.extraction", "point-count growth extraction", Verdict::Inconclusive,
                e.what());
        } catch (const InconclusiveError& e) {
            add("engine.plateau", "sequence plateau detection", Verdict::Inconclusive, e.what());
        } catch (const Error& e) {
            add("engine.error", "entry evaluation", Verdict::Fail, e.what());
        }
        return std::move(report_);
    }

  private:
    using Verdict = CheckRecord::Verdict;

    void add(const std::string& id, const std::string& statement, Verdict v,
             const std::string& evidence = "") {
        report_.checks.push_back({entry_.name, id, statement, v, evidence});
    }
    void check(const std::string& id, const std::string& statement, bool ok,
               const std::string& evidence = "") {
        add(id, statement, ok ? Verdict::Pass : Verdict::Fail, evidence);
    }

    // level-l solutions of the shape I + p^{l-base} G, G a level-base solution
    std::vector<GRMatrix> unipotent_samples(unsigned base, unsigned lvl, unsigned N,
                                            unsigned count, uint64_t seed) {
        auto gs = sample_end_solutions(be_.D, base, N, LieConstraint::full(), count, seed);
        RingPtr R = GaloisRing::get(p_, lvl, N);
        uint64_t pk = 1;
        for (unsigned k = base; k < lvl; ++k) pk *= p_;
        std::vector<GRMatrix> out;
        for (auto& g : gs) {
            GRMatrix E = GRMatrix::identity(R, be_.D.r);
            for (unsigned i = 0; i < be_.D.r; ++i)
                for (unsigned j = 0; j < be_.D.r; ++j) {
                    GRElem lift = R->from_coords(g.at(i, j).c);
                    E.at(i, j) = E.at(i, j) + R->mul_scalar(lift, pk);
                }
            out.push_back(std::move(E));
        }
        return out;
    }

    // multiplicative order of E as a power of p; E must be unipotent mod p
    std::optional<unsigned> p_power_order(const GRMatrix& E) {
        GRMatrix I = GRMatrix::identity(E.ring, E.rows);
        GRMatrix acc = E;
        for (unsigned k = 0; k <= E.ring->m() + 1; ++k) {
            if (acc == I) return k;
            GRMatrix next = acc;
            for (uint64_t i = 1; i < p_; ++i) next = next * acc;
            acc = std::move(next);
        }
        return std::nullopt;
    }

    void run_inner() {
        // build, escalating m_max until plateaus (and the 2n level needed by
        // the commutativity check) are visible
        m_max_ = entry_.m_max;
        for (;;) {
            be_ = build_entry(p_, entry_, m_max_);
            seq_ = be_.constraint.is_full()
                       ? gamma_sequence(be_.D, m_max_, be_.constraint, cfg_, cache_)
                       : relative_suite(be_.D, be_.constraint, m_max_, cfg_, cache_);
            bool more = false;
            bool want_plateau = be_.constraint.plateau_rule_applies(p_);
            if (want_plateau && !seq_.n && be_.D.c * be_.D.d > 0) more = true;
            if (be_.constraint.is_full() && seq_.n && 2 * *seq_.n > m_max_) more = true;
            if (!more || m_max_ >= opt_.m_max_cap) break;
            unsigned next = m_max_ + 2;
            if (seq_.n) next = std::max(next, 2 * *seq_.n);
            m_max_ = std::min(next, opt_.m_max_cap);
        }
        {
            DieudonneModule again = build_entry(p_, entry_, m_max_).D;
            check("entry.rebuild", "recipe rebuilds the identical module",
                  again.hash() == be_.D.hash(), "hash " + to_hex(be_.D.hash()));
        }
        if (be_.constraint.is_full())
            run_full();
        else if (sections_ & kRelative)
            run_relative();
    }

    void run_full() {
        const DieudonneModule& D = be_.D;
        const unsigned cd = D.c * D.d;
        const LieConstraint full = LieConstraint::full();

        unsigned a = a_number(D);
        if (sections_ & kCorollaries)
            check("a.dual", "a-number agrees with the a-number of the dual",
                  a == a_number(dual(D)), "a=" + std::to_string(a));

        std::vector<Rat> slopes = newton_slopes(D);
        if (sections_ & kCorollaries) {
            std::vector<Rat> ds = newton_slopes(dual(D));
            std::vector<Rat> mirror;
            for (const Rat& s : slopes) mirror.emplace_back(s.den - s.num, s.den);
            std::sort(mirror.begin(), mirror.end());
            check("slopes.dual", "dual slopes are the reflected slopes", ds == mirror);
        }
        if ((sections_ & kCorollaries) && entry_.construction.type == Construction::Type::Slopes)
            check("slopes.builder", "computed slopes equal the requested slope data",
                  slopes == entry_.construction.slopes.slopes());
        if ((sections_ & kCorollaries) && entry_.expect.slopes) {
            std::vector<Rat> want = *entry_.expect.slopes;
            std::sort(want.begin(), want.end());
            check("expect.slopes", "slopes match the catalog expectation", slopes == want);
        }

        long long sd = s_height(slope_data_from_multiset(slopes), D.c, D.d);
        if ((sections_ & kCorollaries) && entry_.expect.s)
            check("expect.s", "specializing height matches the catalog expectation",
                  sd == *entry_.expect.s, "s=" + std::to_string(sd));
        if ((sections_ & kCorollaries) && entry_.expect.a)
            check("expect.a", "a-number matches the catalog expectation", a == *entry_.expect.a);

        if (sections_ & kSequenceLaws) check_concavity("seq.concave", seq_);

        unsigned n = 0;
        try {
            n = i_number(seq_, D.c, D.d);
        } catch (const InconclusiveError& e) {
            add("seq.plateau", "sequence reaches its plateau", Verdict::Inconclusive, e.what());
            return;
        }
        if ((sections_ & kCorollaries) && entry_.expect.n)
            check("expect.n", "i-number matches the catalog expectation", n == *entry_.expect.n,
                  "n=" + std::to_string(n));
        std::string ev = "gamma=" + seq_str(seq_) + " n=" + std::to_string(n) +
                         " a=" + std::to_string(a) + " s=" + std::to_string(sd);

        if ((sections_ & kSequenceLaws) && cd > 0) {
            bool lower = static_cast<long long>(a) * a <= seq_.g[1];
            bool strict = true;
            for (unsigned i = 1; i < n; ++i) strict &= seq_.g[i] < seq_.g[i + 1];
            check("seq.strict", "a^2 <= gamma(1) and strict growth up to the i-number",
                  lower && strict, ev);
        }
        if (sections_ & kSequenceLaws) {
            bool constant = true;
            for (unsigned i = n; i <= m_max_; ++i) constant &= seq_.g[i] == seq_.g[n];
            check("seq.plateau_cap", "gamma constant from the i-number on, bounded by c*d",
                  constant && seq_.g[n] <= static_cast<int>(cd), ev);
        }
        if (sections_ & kSeriesMaps) run_series_checks();
        if (!(sections_ & kCorollaries)) return;
        check("height.match", "observed plateau value equals the slope formula",
              seq_.g[n] == sd, ev);
        check("inumber.cap", "i-number at most c*d", n <= cd, ev);
        if (a >= 1) {
            long long s_obs = seq_.g[n];
            check("inumber.window", "i-number within the slope-formula window",
                  n <= s_obs + 1 - static_cast<long long>(a) * a &&
                      s_obs + 1 - static_cast<long long>(a) * a <= s_obs,
                  ev);
            check("inumber.sharp", "i-number at most c*d + 1 - a^2",
                  n <= cd + 1 - static_cast<unsigned>(a) * a, ev);
            long long halfsum = static_cast<long long>(cd) - sd;
            check("inumber.pairing_sum", "i-number bounded through the slope pairing sum",
                  n <= 1 + static_cast<long long>(cd) - static_cast<long long>(a) * a - halfsum &&
                      1 + static_cast<long long>(cd) - static_cast<long long>(a) * a - halfsum <=
                          static_cast<long long>(cd) - halfsum,
                  ev);
        }

        // finiteness of restriction images
        for (unsigned l = 2; l <= std::min(m_max_, n + 2); ++l)
            for (unsigned i = 1; i < l; ++i) {
                int growth = restriction_image_growth(D, l, i, full, cfg_, cache_);
                bool dim_ok = growth == seq_.g[l] - seq_.g[l - i];
                bool fin_ok = (growth == 0) == (l - i >= n);
                check("restrict.l" + std::to_string(l) + "i" + std::to_string(i),
                      "restriction image growth matches gamma differences and is finite "
                      "exactly from the i-number on",
                      dim_ok && fin_ok, "growth=" + std::to_string(growth));
            }

        // i-number of the square
        if (D.r <= opt_.square_height_cap && cd > 0) {
            DieudonneModule D2 = direct_sum(D, D);
            unsigned m2 = m_max_;
            std::optional<unsigned> n2;
            for (;;) {
                CentralizingSequence s2 = gamma_sequence(D2, m2, full, cfg_, cache_);
                n2 = s2.n;
                if (n2 || m2 >= opt_.m_max_cap) break;
                m2 = std::min(m2 + 2, opt_.m_max_cap);
                DieudonneModule base = build_entry(p_, entry_, m2).D;
                D2 = direct_sum(base, base);
            }
            if (n2)
                check("square.inumber", "the square has the same i-number", *n2 == n,
                      "n(D^2)=" + std::to_string(*n2));
            else
                add("square.inumber", "the square has the same i-number", Verdict::Inconclusive,
                    "no plateau within cap");
        }

        // exponent of the unipotent points at level n+1
        unsigned Ns = 4 * D.e <= opt_.n_cap ? 4 * D.e : D.e;
        if (cd > 0 && n >= 1 && n + 1 <= m_max_) {
            auto samples = unipotent_samples(n, n + 1, Ns, opt_.samples, opt_.seed + 11);
            unsigned maxord = 0;
            bool bounded = true;
            for (const auto& E : samples) {
                auto k = p_power_order(E);
                if (!k) { bounded = false; break; }
                maxord = std::max(maxord, *k);
            }
            check("unipotent.exponent",
                  "unipotent points one level above the i-number have exponent p^n",
                  bounded && maxord == n,
                  "max order p^" + std::to_string(maxord) + " over " +
                      std::to_string(samples.size()) + " samples");
        }

        // commutativity at level 2n
        if (cd > 0 && n >= 1 && 2 * n <= m_max_) {
            auto samples = unipotent_samples(n, 2 * n, Ns, opt_.samples, opt_.seed + 13);
            bool commute = true;
            for (size_t i = 0; i + 1 < samples.size() && commute; i += 2)
                commute = samples[i] * samples[i + 1] == samples[i + 1] * samples[i];
            check("unipotent.commute", "unipotent points at twice the i-number commute", commute,
                  std::to_string(samples.size() / 2) + " pairs");
        }

        // characteristic polynomials of level-1 solutions are constant on
        // components: coefficients in the prime field; nilpotence on the
        // identity-component candidates
        {
            auto samples =
                sample_end_solutions(D, 1, 2 * D.e, full, opt_.samples, opt_.seed + 17);
            bool coeffs_prime = true, nilpotent_ok = true;
            for (const auto& E : samples) {
                auto chi = char_poly(E);
                bool all_prime = true, is_zero_chi = true;
                for (size_t k = 1; k < chi.size(); ++k) {
                    for (size_t t = 1; t < chi[k].c.size(); ++t)
                        if (chi[k].c[t]) all_prime = false;
                    if (!chi[k].is_zero()) is_zero_chi = false;
                }
                coeffs_prime &= all_prime;
                if (is_zero_chi) {
                    GRMatrix P = GRMatrix::identity(E.ring, E.rows);
                    for (unsigned k = 0; k < E.rows; ++k) P = P * E;
                    nilpotent_ok &= P.is_zero();
                }
            }
            check("charpoly.prime_field",
                  "level-1 solution characteristic polynomials have prime-field "
                  "coefficients; zero-charpoly candidates are nilpotent",
                  coeffs_prime && nilpotent_ok, std::to_string(samples.size()) + " samples");
        }

        // the two normalization criteria agree on random invertible g
        {
            bool agreed = true;
            unsigned trues = 0, n_g = 12;
            Rng rng(opt_.seed + 19);
            try {
                for (unsigned k = 0; k < n_g; ++k) {
                    GRMatrix g(D.A.ring, D.r, D.r);
                    do {
                        for (auto& x : g.a) {
                            std::vector<uint64_t> c(D.e);
                            for (auto& v : c) v = rng.below(D.A.ring->q());
                            x = D.A.ring->from_coords(std::move(c));
                        }
                    } while (!is_invertible(g));
                    trues += check_F1(D, g);
                }
                trues += check_F1(D, GRMatrix::identity(D.A.ring, D.r));
            } catch (const Error& e) {
                agreed = false;
            }
            check("normalize.agree", "integrality and kernel-stability criteria agree",
                  agreed, std::to_string(trues) + " normalizing of " + std::to_string(n_g + 1));
        }

    }

    // series maps preserve endomorphism solutions
    void run_series_checks() {
        const DieudonneModule& D = be_.D;
        unsigned m = std::min(2u, m_max_);
        auto samples = sample_end_solutions(D, m, 2 * D.e, LieConstraint::full(), opt_.samples,
                                            opt_.seed + 23);
        unsigned tested = 0;
        bool ok = true;
        for (const auto& E : samples) {
            GRMatrix Ebar = map_reduce_precision(E, 1);
            GRMatrix P = GRMatrix::identity(Ebar.ring, D.r);
            for (unsigned k = 0; k < D.r; ++k) P = P * Ebar;
            if (!P.is_zero()) continue;
            GRMatrix pE = scalar_mul(E.ring->from_int(p_), E);
            ok &= endo_preservation_check(D, m, pE, SigmaDomain::one_t(D.r));
            ++tested;
        }
        if (tested)
            check("explog.preserve", "series maps send solutions to solutions", ok,
                  std::to_string(tested) + " samples");
        else
            add("explog.preserve", "series maps send solutions to solutions",
                Verdict::NotApplicable, "no nilpotent samples at this size");
    }

    void check_concavity(const std::string& id, const CentralizingSequence& s) {
        bool ok = true;
        for (unsigned l = 1; ok && l <= m_max_; ++l)
            for (unsigned i = 0; i + 1 + l <= m_max_; ++i)
                if (s.g[i + 1 + l] - s.g[i + 1] > s.g[i + l] - s.g[i]) {
                    ok = false;
                    break;
                }
        check(id, "level differences of the sequence are non-increasing", ok, seq_str(s));
    }

    void run_relative() {
        const DieudonneModule& D = be_.D;
        bool gated = be_.constraint.plateau_rule_applies(p_);
        std::string ev = "gamma=" + seq_str(seq_) + " " + be_.constraint.describe();

        {
            bool mono = true;
            for (unsigned i = 1; i <= m_max_; ++i) mono &= seq_.g[i] >= seq_.g[i - 1];
            check("rel.monotone", "relative sequence is increasing", mono, ev);
        }
        check_concavity("rel.concave", seq_);

        // the unconstrained i-number, for the comparison bounds
        CentralizingSequence full_seq =
            gamma_sequence(D, m_max_, LieConstraint::full(), cfg_, cache_);
        unsigned n_full = 0;
        try {
            n_full = i_number(full_seq, D.c, D.d);
        } catch (const InconclusiveError& e) {
            add("rel.base", "underlying i-number computable", Verdict::Inconclusive, e.what());
            return;
        }

        {
            // constancy from the underlying i-number on holds without any gate
            bool constant = true;
            for (unsigned l = n_full; l + 1 <= m_max_; ++l)
                constant &= seq_.g[l + 1] == seq_.g[l];
            check("rel.stable", "relative sequence constant from the underlying i-number on",
                  constant, ev + " n_D=" + std::to_string(n_full));
        }

        if (!gated) {
            add("rel.gate",
                "plateau rule withheld for this constraint at p = " + std::to_string(p_) +
                    "; only the bound n^G <= n_D + 1 = " + std::to_string(n_full + 1) +
                    " is reported",
                Verdict::NotApplicable, ev);
            return;
        }

        if (!seq_.n) {
            add("rel.plateau", "relative sequence reaches its plateau", Verdict::Inconclusive,
                ev);
            return;
        }
        unsigned nG = *seq_.n;
        if (seq_.all_zero()) {
            add("rel.zero", "relative sequence identically zero; plateau value is an upper bound",
                Verdict::Pass, ev + " nG<=" + std::to_string(nG));
        } else {
            bool strict = true;
            for (unsigned i = 1; i < nG; ++i) strict &= seq_.g[i] < seq_.g[i + 1];
            check("rel.strict", "strict growth up to the relative i-number", strict,
                  ev + " nG=" + std::to_string(nG));
        }
        {
            bool constant = true;
            for (unsigned i = nG; i <= m_max_; ++i) constant &= seq_.g[i] == seq_.g[nG];
            check("rel.plateau", "relative sequence constant from its i-number on", constant, ev);
        }
        check("rel.bound", "relative i-number at most the unconstrained one", nG <= n_full,
              "nG=" + std::to_string(nG) + " n=" + std::to_string(n_full));
        check("rel.bound_plus_one", "relative i-number at most the unconstrained one plus 1",
              nG <= n_full + 1, "");

        for (unsigned l = 2; l <= std::min(m_max_, nG + 2); ++l)
            for (unsigned i = 1; i < l; ++i) {
                int growth = restriction_image_growth(D, l, i, be_.constraint, cfg_, cache_);
                bool dim_ok = growth == seq_.g[l] - seq_.g[l - i];
                bool fin_ok = (growth == 0) == (l - i >= nG);
                check("rel.finite.l" + std::to_string(l) + "i" + std::to_string(i),
                      "relative restriction image growth matches the sequence differences "
                      "and is finite exactly from the relative i-number on",
                      dim_ok && fin_ok, "growth=" + std::to_string(growth));
            }

        if (nG >= 1 && 2 * nG <= m_max_ && !seq_.all_zero()) {
            auto gs = sample_end_solutions(D, nG, 4 * D.e, be_.constraint, opt_.samples,
                                           opt_.seed + 29);
            RingPtr R = GaloisRing::get(p_, 2 * nG, 4 * D.e);
            uint64_t pk = 1;
            for (unsigned k = nG; k < 2 * nG; ++k) pk *= p_;
            bool commute = true;
            for (size_t i = 0; i + 1 < gs.size() && commute; i += 2) {
                GRMatrix E1 = GRMatrix::identity(R, D.r), E2 = E1;
                for (unsigned a = 0; a < D.r; ++a)
                    for (unsigned b = 0; b < D.r; ++b) {
                        E1.at(a, b) =
                            E1.at(a, b) + R->mul_scalar(R->from_coords(gs[i].at(a, b).c), pk);
                        E2.at(a, b) =
                            E2.at(a, b) + R->mul_scalar(R->from_coords(gs[i + 1].at(a, b).c), pk);
                    }
                commute = E1 * E2 == E2 * E1;
            }
            check("rel.commute", "relative unipotent points at twice the i-number commute",
                  commute, std::to_string(gs.size() / 2) + " pairs");
        }
    }

    uint64_t p_;
    const CatalogEntry& entry_;
    const VerifyOptions& opt_;
    PointCountCache* cache_;
    unsigned sections_ = kAllSections;
    ExtractionConfig cfg_;
    unsigned m_max_ = 3;
    BuiltEntry be_;
    CentralizingSequence seq_;
    VerificationReport report_;
};

} // namespace

VerificationReport verify_entry(uint64_t p, const CatalogEntry& entry, const VerifyOptions& opt,
                                PointCountCache* cache, unsigned sections) {
    return EntryChecker(p, entry, opt, cache, sections).run();
}

VerificationReport verify_sequence_laws(uint64_t p, const CatalogEntry& entry,
                                      const VerifyOptions& opt, PointCountCache* cache) {
    return verify_entry(p, entry, opt, cache, kSequenceLaws);
}

VerificationReport verify_corollaries(uint64_t p, const CatalogEntry& entry,
                                      const VerifyOptions& opt, PointCountCache* cache) {
    return verify_entry(p, entry, opt, cache, kSequenceLaws | kCorollaries);
}

VerificationReport verify_relative(uint64_t p, const CatalogEntry& entry,
                                   const VerifyOptions& opt, PointCountCache* cache) {
    return verify_entry(p, entry, opt, cache, kRelative);
}

VerificationReport verify_explog(uint64_t p, const CatalogEntry& entry,
                                 const VerifyOptions& opt, PointCountCache* cache) {
    return verify_entry(p, entry, opt, cache, kSeriesMaps);
}

VerificationReport verify_catalog(const Catalog& cat, const VerifyOptions& opt,
                                  PointCountCache* cache) {
    std::vector<size_t> idx(cat.entries.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto reports = parallel_map(
        idx,
        [&](size_t i) { return verify_entry(cat.p, cat.entries[i], opt, cache); },
        opt.jobs);
    VerificationReport all;
    for (auto& r : reports)
        for (auto& c : r.checks) all.checks.push_back(std::move(c));
    return all;
}

} // namespace dmod

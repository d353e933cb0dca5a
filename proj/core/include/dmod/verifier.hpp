#ifndef DMOD_VERIFIER_HPP
#define DMOD_VERIFIER_HPP

#include "dmod/catalog.hpp"
#include "dmod/centralizer.hpp"

namespace dmod {

struct CheckRecord {
    enum class Verdict { Pass, Fail, Inconclusive, NotApplicable };
    std::string entry;
    std::string id;        // stable check identifier
    std::string statement; // the claim being tested
    Verdict verdict = Verdict::Pass;
    std::string evidence;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool green() const;
    unsigned count(CheckRecord::Verdict v) const;
    std::string text() const;
    std::string to_json() const;
};

struct VerifyOptions {
    unsigned jobs = 1;
    uint64_t seed = 0;
    unsigned n_cap = 84;
    unsigned m_max_cap = 7;          // escalation ceiling for plateau hunting
    unsigned square_height_cap = 3;  // run the D^2 i-number check when r <= this
    unsigned samples = 24;           // sampling-based checks
};

// check groups runnable on their own
enum VerifySections : unsigned {
    kSequenceLaws = 1,   // monotone/concave growth, strictness, plateau cap
    kCorollaries = 2,    // bounds, restriction finiteness, square, exponent
    kSeriesMaps = 4,     // exp/log preservation sweeps
    kRelative = 8,       // constrained sequences and their bounds
    kAllSections = 0xf,
};

VerificationReport verify_entry(uint64_t p, const CatalogEntry& entry, const VerifyOptions& opt,
                                PointCountCache* cache, unsigned sections = kAllSections);

// the growth-law checks alone (decreasing increments, strict growth up to
// the i-number, plateau bounded by c*d)
VerificationReport verify_sequence_laws(uint64_t p, const CatalogEntry& entry,
                                      const VerifyOptions& opt, PointCountCache* cache);
// the bound and finiteness checks alone
VerificationReport verify_corollaries(uint64_t p, const CatalogEntry& entry,
                                      const VerifyOptions& opt, PointCountCache* cache);
// constrained-context checks for an entry with a constraint
VerificationReport verify_relative(uint64_t p, const CatalogEntry& entry,
                                   const VerifyOptions& opt, PointCountCache* cache);
// series-map sweeps against the entry's solution samples
VerificationReport verify_explog(uint64_t p, const CatalogEntry& entry,
                                 const VerifyOptions& opt, PointCountCache* cache);

// every entry, deterministic record order; parallel over entries when
// opt.jobs > 1
VerificationReport verify_catalog(const Catalog& cat, const VerifyOptions& opt,
                                  PointCountCache* cache);

} // namespace dmod

#endif

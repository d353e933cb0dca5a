#ifndef DMOD_CENTRALIZER_HPP
#define DMOD_CENTRALIZER_HPP

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "dmod/dieudonne.hpp"
#include "dmod/zpm_linalg.hpp"

namespace dmod {

// Linear condition cutting the endomorphism scheme down to a relative
// context: a Hom block between two summands, a parabolic preserving a
// coordinate filtration, or the Lie algebra of a pairing-preserving group.
struct LieConstraint {
    enum class Kind { Full, HomBlock, Parabolic, Pairing };
    Kind kind = Kind::Full;
    unsigned r1 = 0, r2 = 0;             // HomBlock: r1 + r2 = r
    std::vector<unsigned> filtration;    // Parabolic: strictly increasing ranks in (0, r)
    GRMatrix J;                          // Pairing: gram matrix over the module's ring
    bool alternating = true;             // Pairing flavor

    static LieConstraint full();
    static LieConstraint hom_block(unsigned r1, unsigned r2);
    static LieConstraint parabolic(std::vector<unsigned> ranks);
    static LieConstraint pairing(GRMatrix gram, bool alternating);

    bool is_full() const { return kind == Kind::Full; }
    // whether the i-number plateau rule is justified for this constraint:
    // HomBlock and Parabolic are product-stable, Pairing needs p > 2
    bool plateau_rule_applies(uint64_t p) const;
    // entry (i, j) of an endomorphism may be nonzero (Pairing keeps all and
    // adds equations instead)
    bool entry_allowed(unsigned i, unsigned j) const;

    std::vector<uint8_t> canonical_bytes() const;
    uint64_t hash() const;
    std::string describe() const;
};

// checks the pairing compatibility A^T J A = p sigma(J) against a module
void validate_constraint(const LieConstraint& cst, const DieudonneModule& D);

// Append-only memo of end_log_size evaluations, optionally file-backed.
// One record per line: module-hash m N constraint-hash log_size.
class PointCountCache {
  public:
    PointCountCache() = default;
    explicit PointCountCache(const std::string& path);
    std::optional<unsigned> lookup(uint64_t mh, unsigned m, unsigned N, uint64_t ch) const;
    void record(uint64_t mh, unsigned m, unsigned N, uint64_t ch, unsigned log_size);
    size_t size() const;

  private:
    mutable std::mutex mu_;
    std::map<std::tuple<uint64_t, unsigned, unsigned, uint64_t>, unsigned> map_;
    std::string path_;
};

// The semilinear endomorphism equations at level m over F_{p^N}-points,
// assembled as Z/p^m-linear conditions on the coordinates of E.
struct EndSystem {
    ZpmMatrix mat;
    RingPtr ring;                                  // GR(p^m, N)
    unsigned r = 0, N = 0;
    std::vector<std::pair<unsigned, unsigned>> support; // allowed entries of E
    GRMatrix decode(const std::vector<uint64_t>& coords) const;
};

EndSystem build_end_system(const DieudonneModule& D, unsigned m, unsigned N,
                           const LieConstraint& cst);

// exponent k with p^k solutions E of {E A = A sigma(E), E B = B sigma^{-1}(E),
// E in the constraint} over GR(p^m, N)
unsigned end_log_size(const DieudonneModule& D, unsigned m, unsigned N,
                      const LieConstraint& cst, PointCountCache* cache = nullptr);

// reproducible uniform solutions of the system above
std::vector<GRMatrix> sample_end_solutions(const DieudonneModule& D, unsigned m, unsigned N,
                                           const LieConstraint& cst, unsigned count,
                                           uint64_t seed);

struct WindowEvidence {
    unsigned n0 = 0, delta = 0;
    std::vector<std::pair<unsigned, unsigned>> counts; // (N, log_size), includes rejected windows
    bool accepted = false;
};

struct ExtractionConfig {
    unsigned n_cap = 84;
};

// Scheme dimension of a point count f(N) = gamma*N + bounded eventually
// periodic part, certified by equal consecutive increments over an
// arithmetic progression of N plus one cross-validation point. Throws
// ExtractionError carrying the evidence when no window stabilizes. A hint
// (in units of e) is tried first and updated on success, so consecutive
// levels of one module skip the schedule scan.
int extract_growth(const std::function<unsigned(unsigned)>& f, unsigned e,
                   const ExtractionConfig& cfg, WindowEvidence* ev,
                   std::pair<unsigned, unsigned>* hint = nullptr);

int gamma(const DieudonneModule& D, unsigned m, const LieConstraint& cst,
          const ExtractionConfig& cfg = {}, PointCountCache* cache = nullptr,
          WindowEvidence* ev = nullptr, std::pair<unsigned, unsigned>* hint = nullptr);

struct CentralizingSequence {
    std::vector<int> g;           // g[0..m_max], g[0] = 0
    std::optional<unsigned> n;    // plateau level when derivable
    std::vector<WindowEvidence> evidence; // per level 1..m_max
    bool all_zero() const {
        for (int v : g)
            if (v) return false;
        return true;
    }
    // the plateau value g(n) when the plateau was named
    std::optional<long long> s_observed() const {
        if (!n) return std::nullopt;
        return g[*n];
    }
};

// gamma(0..m_max) with the sequence laws checked (monotone, concave
// increments); n populated by the plateau rule where justified
CentralizingSequence gamma_sequence(const DieudonneModule& D, unsigned m_max,
                                    const LieConstraint& cst, const ExtractionConfig& cfg = {},
                                    PointCountCache* cache = nullptr);

// 0 if cd = 0, else min{i >= 1 : g(i+1) = g(i)}; InconclusiveError when the
// sequence shows no plateau within m_max
unsigned i_number(const CentralizingSequence& seq, unsigned c, unsigned d);

// log size of the image of the level-l solution set under reduction mod p^i
unsigned restriction_image_log_size(const DieudonneModule& D, unsigned l, unsigned i,
                                    unsigned N, const LieConstraint& cst,
                                    PointCountCache* cache = nullptr);

// growth exponent of the restriction image across N (equals g(l) - g(l-i))
int restriction_image_growth(const DieudonneModule& D, unsigned l, unsigned i,
                             const LieConstraint& cst, const ExtractionConfig& cfg = {},
                             PointCountCache* cache = nullptr);

// the relative sequence; n is populated only when the plateau rule applies
// to the constraint (otherwise left empty and only bounds are reportable)
CentralizingSequence relative_suite(const DieudonneModule& D, const LieConstraint& cst,
                                    unsigned m_max, const ExtractionConfig& cfg = {},
                                    PointCountCache* cache = nullptr);

} // namespace dmod

#endif

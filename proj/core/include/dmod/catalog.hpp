#ifndef DMOD_CATALOG_HPP
#define DMOD_CATALOG_HPP

#include <optional>
#include <string>

#include "dmod/centralizer.hpp"
#include "dmod/dieudonne.hpp"

namespace dmod {

// Reproducible module recipe. Twists draw their matrix digits from a seeded
// stream indexed by position, so reductions of the same recipe to different
// working precisions agree.
struct Construction {
    enum class Type { Slopes, Matrix, Twist, DirectSum, Dual, Pairing };
    Type type = Type::Slopes;
    SlopeData slopes;                            // Slopes
    unsigned e = 1;                              // Matrix
    std::vector<std::vector<uint64_t>> entries;  // Matrix: row-major coordinate arrays
    std::vector<Construction> parts;             // Twist/Dual/Pairing: [base]; DirectSum: [a, b]
    uint64_t seed = 0;                           // Twist
    bool alternating = true;                     // Pairing
};

struct ConstraintSpec {
    enum class Kind { None, HomBlock, Parabolic, Pairing };
    Kind kind = Kind::None;
    unsigned r1 = 0, r2 = 0;
    std::vector<unsigned> ranks;
    bool alternating = true;
};

struct Expectations {
    std::optional<unsigned> a;
    std::optional<std::vector<Rat>> slopes;
    std::optional<long long> s;
    std::optional<unsigned> n;
};

struct CatalogEntry {
    std::string name;
    Construction construction;
    unsigned m_max = 3;
    ConstraintSpec constraint;
    Expectations expect;
};

struct Catalog {
    uint64_t p = 2;
    std::vector<CatalogEntry> entries;
};

// structural parameters derivable without choosing a working precision
struct ModuleShape {
    unsigned e = 1, r = 0, c = 0, d = 0;
};
ModuleShape shape_of(uint64_t p, const Construction& cons);

// build at an explicit working precision (deterministic; twists are
// precision-coherent digit streams)
DieudonneModule build_construction(uint64_t p, const Construction& cons, unsigned m_work);

struct BuiltEntry {
    DieudonneModule D;
    LieConstraint constraint;
};

// working precision max(m_max + 1, e*d + 1); constraint realized against the
// built module (hyperbolic gram matrix for pairing entries)
BuiltEntry build_entry(uint64_t p, const CatalogEntry& entry, unsigned m_max);

Catalog parse_catalog(const std::string& json_text);
std::string catalog_to_json(const Catalog& cat);

// all slope types of height <= 4, two seeded twists each, plus the relative
// context entries (two hom pairs, one filtered, one polarized)
Catalog default_catalog(uint64_t p);

} // namespace dmod

#endif

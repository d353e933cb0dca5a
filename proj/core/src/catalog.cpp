#include "dmod/catalog.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <json.hpp>

namespace dmod {

using nlohmann::json;

ModuleShape shape_of(uint64_t p, const Construction& cons) {
    switch (cons.type) {
        case Construction::Type::Slopes: {
            cons.slopes.validate();
            return {1, cons.slopes.height(), cons.slopes.codim(), cons.slopes.dim()};
        }
        case Construction::Type::Matrix: {
            unsigned r = 0;
            while (r * r < cons.entries.size()) ++r;
            if (r * r != cons.entries.size()) throw Error("matrix entry count is not a square");
            RingPtr K = GaloisRing::get(p, 1, cons.e);
            GRMatrix Ab(K, r, r);
            for (unsigned i = 0; i < r; ++i)
                for (unsigned j = 0; j < r; ++j) {
                    std::vector<uint64_t> c = cons.entries[size_t(i) * r + j];
                    c.resize(cons.e, 0);
                    for (auto& v : c) v %= p;
                    Ab.at(i, j) = K->from_coords(std::move(c));
                }
            unsigned c = rank_mod_p(Ab);
            return {cons.e, r, c, r - c};
        }
        case Construction::Type::Twist: return shape_of(p, cons.parts.at(0));
        case Construction::Type::Dual: {
            ModuleShape s = shape_of(p, cons.parts.at(0));
            std::swap(s.c, s.d);
            return s;
        }
        case Construction::Type::DirectSum: {
            ModuleShape a = shape_of(p, cons.parts.at(0)), b = shape_of(p, cons.parts.at(1));
            return {std::lcm(a.e, b.e), a.r + b.r, a.c + b.c, a.d + b.d};
        }
        case Construction::Type::Pairing: {
            ModuleShape s = shape_of(p, cons.parts.at(0));
            return {s.e, 2 * s.r, s.c + s.d, s.c + s.d};
        }
    }
    throw Error("unknown construction type");
}

namespace {

// digit stream for twist matrices: independent of the working precision so
// truncations of one recipe stay coherent
uint64_t twist_digit(uint64_t seed, uint64_t nonce, unsigned i, unsigned j, unsigned t,
                     unsigned k, uint64_t p) {
    uint64_t h = 0xcbf29ce484222325ULL;
    hash_u64(h, seed);
    hash_u64(h, nonce);
    hash_u64(h, (uint64_t(i) << 40) | (uint64_t(j) << 20) | t);
    hash_u64(h, k);
    // FNV only avalanches upward; finalize so the low bits see every input
    return splitmix64(h) % p;
}

GRMatrix twist_matrix(const DieudonneModule& base, uint64_t seed) {
    RingPtr R = base.A.ring;
    unsigned r = base.r, e = base.e, m = base.m_work;
    uint64_t p = base.p;
    for (uint64_t nonce = 0;; ++nonce) {
        GRMatrix g(R, r, r);
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < r; ++j) {
                std::vector<uint64_t> coords(e, 0);
                for (unsigned t = 0; t < e; ++t) {
                    uint64_t v = 0, pk = 1;
                    for (unsigned k = 0; k < m; ++k) {
                        v += twist_digit(seed, nonce, i, j, t, k, p) * pk;
                        pk *= p;
                    }
                    coords[t] = v;
                }
                g.at(i, j) = R->from_coords(std::move(coords));
            }
        if (is_invertible(g)) return g;
    }
}

GRMatrix hyperbolic_gram(const DieudonneModule& D, bool alternating) {
    RingPtr R = D.A.ring;
    unsigned h = D.r / 2;
    GRMatrix J = GRMatrix::zero(R, D.r, D.r);
    for (unsigned i = 0; i < h; ++i) {
        J.at(i, h + i) = R->one();
        J.at(h + i, i) = alternating ? -R->one() : R->one();
    }
    return J;
}

} // namespace

DieudonneModule build_construction(uint64_t p, const Construction& cons, unsigned m_work) {
    switch (cons.type) {
        case Construction::Type::Slopes: return from_slopes(p, cons.slopes, m_work);
        case Construction::Type::Matrix: {
            ModuleShape s = shape_of(p, cons);
            RingPtr R = GaloisRing::get(p, m_work, cons.e);
            GRMatrix A(R, s.r, s.r);
            for (unsigned i = 0; i < s.r; ++i)
                for (unsigned j = 0; j < s.r; ++j) {
                    std::vector<uint64_t> c = cons.entries[size_t(i) * s.r + j];
                    c.resize(cons.e, 0);
                    A.at(i, j) = R->from_coords(std::move(c));
                }
            return from_matrix(p, cons.e, A, m_work);
        }
        case Construction::Type::Twist: {
            DieudonneModule base = build_construction(p, cons.parts.at(0), m_work);
            return twist(base, twist_matrix(base, cons.seed));
        }
        case Construction::Type::Dual: return dual(build_construction(p, cons.parts.at(0), m_work));
        case Construction::Type::DirectSum:
            return direct_sum(build_construction(p, cons.parts.at(0), m_work),
                              build_construction(p, cons.parts.at(1), m_work));
        case Construction::Type::Pairing: {
            DieudonneModule base = build_construction(p, cons.parts.at(0), m_work);
            return direct_sum(base, dual(base));
        }
    }
    throw Error("unknown construction type");
}

BuiltEntry build_entry(uint64_t p, const CatalogEntry& entry, unsigned m_max) {
    ModuleShape s = shape_of(p, entry.construction);
    // slope checks run on the dual too, so cover e*max(c, d)
    unsigned m_work = std::max(m_max + 1, s.e * std::max(s.c, s.d) + 1);
    BuiltEntry out{build_construction(p, entry.construction, m_work), LieConstraint::full()};
    switch (entry.constraint.kind) {
        case ConstraintSpec::Kind::None:
            if (entry.construction.type == Construction::Type::Pairing)
                out.constraint = LieConstraint::pairing(
                    hyperbolic_gram(out.D, entry.construction.alternating),
                    entry.construction.alternating);
            break;
        case ConstraintSpec::Kind::HomBlock:
            out.constraint = LieConstraint::hom_block(entry.constraint.r1, entry.constraint.r2);
            break;
        case ConstraintSpec::Kind::Parabolic:
            out.constraint = LieConstraint::parabolic(entry.constraint.ranks);
            break;
        case ConstraintSpec::Kind::Pairing:
            out.constraint = LieConstraint::pairing(
                hyperbolic_gram(out.D, entry.constraint.alternating),
                entry.constraint.alternating);
            break;
    }
    validate_constraint(out.constraint, out.D);
    return out;
}

// ---- JSON ----

namespace {

json construction_to_json(const Construction& c) {
    json j;
    switch (c.type) {
        case Construction::Type::Slopes: {
            j["type"] = "slopes";
            json arr = json::array();
            for (const auto& s : c.slopes.summands) arr.push_back({s.c, s.d, s.mult});
            j["summands"] = arr;
            break;
        }
        case Construction::Type::Matrix:
            j["type"] = "matrix";
            j["e"] = c.e;
            j["entries"] = c.entries;
            break;
        case Construction::Type::Twist:
            j["type"] = "twist";
            j["base"] = construction_to_json(c.parts.at(0));
            j["seed"] = c.seed;
            break;
        case Construction::Type::Dual:
            j["type"] = "dual";
            j["base"] = construction_to_json(c.parts.at(0));
            break;
        case Construction::Type::DirectSum:
            j["type"] = "direct_sum";
            j["parts"] = {construction_to_json(c.parts.at(0)), construction_to_json(c.parts.at(1))};
            break;
        case Construction::Type::Pairing:
            j["type"] = "pairing";
            j["base"] = construction_to_json(c.parts.at(0));
            j["form"] = c.alternating ? "alternating" : "symmetric";
            break;
    }
    return j;
}

Construction construction_from_json(const json& j) {
    Construction c;
    std::string type = j.at("type").get<std::string>();
    if (type == "slopes") {
        c.type = Construction::Type::Slopes;
        for (const auto& s : j.at("summands")) {
            SlopeSummand sm;
            sm.c = s.at(0).get<unsigned>();
            sm.d = s.at(1).get<unsigned>();
            sm.mult = s.size() > 2 ? s.at(2).get<unsigned>() : 1;
            c.slopes.summands.push_back(sm);
        }
    } else if (type == "matrix") {
        c.type = Construction::Type::Matrix;
        c.e = j.value("e", 1u);
        c.entries = j.at("entries").get<std::vector<std::vector<uint64_t>>>();
    } else if (type == "twist") {
        c.type = Construction::Type::Twist;
        c.parts.push_back(construction_from_json(j.at("base")));
        c.seed = j.value("seed", 0ull);
    } else if (type == "dual") {
        c.type = Construction::Type::Dual;
        c.parts.push_back(construction_from_json(j.at("base")));
    } else if (type == "direct_sum") {
        c.type = Construction::Type::DirectSum;
        for (const auto& part : j.at("parts")) c.parts.push_back(construction_from_json(part));
        if (c.parts.size() != 2) throw Error("direct_sum takes exactly two parts");
    } else if (type == "pairing") {
        c.type = Construction::Type::Pairing;
        c.parts.push_back(construction_from_json(j.at("base")));
        c.alternating = j.value("form", std::string("alternating")) == "alternating";
    } else {
        throw Error("unknown construction type: " + type);
    }
    return c;
}

} // namespace

Catalog parse_catalog(const std::string& json_text) {
    json j = json::parse(json_text);
    Catalog cat;
    cat.p = j.at("p").get<uint64_t>();
    for (const auto& je : j.at("entries")) {
        CatalogEntry e;
        e.name = je.at("name").get<std::string>();
        e.construction = construction_from_json(je.at("construction"));
        e.m_max = je.value("m_max", 3u);
        if (je.contains("constraint")) {
            const auto& jc = je.at("constraint");
            std::string kind = jc.at("kind").get<std::string>();
            if (kind == "hom_block") {
                e.constraint.kind = ConstraintSpec::Kind::HomBlock;
                e.constraint.r1 = jc.at("r1").get<unsigned>();
                e.constraint.r2 = jc.at("r2").get<unsigned>();
            } else if (kind == "parabolic") {
                e.constraint.kind = ConstraintSpec::Kind::Parabolic;
                e.constraint.ranks = jc.at("ranks").get<std::vector<unsigned>>();
            } else if (kind == "pairing") {
                e.constraint.kind = ConstraintSpec::Kind::Pairing;
                e.constraint.alternating =
                    jc.value("form", std::string("alternating")) == "alternating";
            } else if (kind != "full") {
                throw Error("unknown constraint kind: " + kind);
            }
        }
        if (je.contains("expect")) {
            const auto& jx = je.at("expect");
            if (jx.contains("a")) e.expect.a = jx.at("a").get<unsigned>();
            if (jx.contains("s")) e.expect.s = jx.at("s").get<long long>();
            if (jx.contains("n")) e.expect.n = jx.at("n").get<unsigned>();
            if (jx.contains("slopes")) {
                std::vector<Rat> sl;
                for (const auto& r : jx.at("slopes"))
                    sl.emplace_back(r.at(0).get<long long>(), r.at(1).get<long long>());
                e.expect.slopes = sl;
            }
        }
        cat.entries.push_back(std::move(e));
    }
    return cat;
}

std::string catalog_to_json(const Catalog& cat) {
    json j;
    j["p"] = cat.p;
    json entries = json::array();
    for (const auto& e : cat.entries) {
        json je;
        je["name"] = e.name;
        je["construction"] = construction_to_json(e.construction);
        je["m_max"] = e.m_max;
        switch (e.constraint.kind) {
            case ConstraintSpec::Kind::None: break;
            case ConstraintSpec::Kind::HomBlock:
                je["constraint"] = {{"kind", "hom_block"},
                                    {"r1", e.constraint.r1},
                                    {"r2", e.constraint.r2}};
                break;
            case ConstraintSpec::Kind::Parabolic:
                je["constraint"] = {{"kind", "parabolic"}, {"ranks", e.constraint.ranks}};
                break;
            case ConstraintSpec::Kind::Pairing:
                je["constraint"] = {
                    {"kind", "pairing"},
                    {"form", e.constraint.alternating ? "alternating" : "symmetric"}};
                break;
        }
        json jx;
        if (e.expect.a) jx["a"] = *e.expect.a;
        if (e.expect.s) jx["s"] = *e.expect.s;
        if (e.expect.n) jx["n"] = *e.expect.n;
        if (e.expect.slopes) {
            json arr = json::array();
            for (const Rat& r : *e.expect.slopes) arr.push_back({r.num, r.den});
            jx["slopes"] = arr;
        }
        if (!jx.empty()) je["expect"] = jx;
        entries.push_back(je);
    }
    j["entries"] = entries;
    return j.dump(2);
}

// ---- default catalog ----

namespace {

void enumerate_slope_types(unsigned height, std::vector<SlopeData>& out) {
    // coprime summands available up to the height
    std::vector<std::pair<unsigned, unsigned>> pool;
    for (unsigned c = 0; c <= height; ++c)
        for (unsigned d = 0; d <= height; ++d) {
            if (c + d == 0 || c + d > height) continue;
            if (std::gcd(c, d) != 1) continue;
            pool.emplace_back(c, d);
        }
    std::sort(pool.begin(), pool.end());
    // multisets over the pool with total height exactly `height`
    std::vector<SlopeSummand> cur;
    std::function<void(size_t, unsigned)> rec = [&](size_t idx, unsigned left) {
        if (left == 0) {
            out.push_back(SlopeData{cur});
            return;
        }
        if (idx == pool.size()) return;
        auto [c, d] = pool[idx];
        unsigned rs = c + d;
        rec(idx + 1, left);
        for (unsigned mult = 1; mult * rs <= left; ++mult) {
            cur.push_back({c, d, mult});
            rec(idx + 1, left - mult * rs);
            cur.pop_back();
        }
    };
    rec(0, height);
}

std::string slope_name(const SlopeData& s) {
    std::string name;
    for (const auto& sm : s.summands) {
        if (!name.empty()) name += "_";
        name += "c" + std::to_string(sm.c) + "d" + std::to_string(sm.d);
        if (sm.mult > 1) name += "x" + std::to_string(sm.mult);
    }
    return name;
}

Construction slopes_construction(std::vector<SlopeSummand> summands) {
    Construction c;
    c.type = Construction::Type::Slopes;
    c.slopes.summands = std::move(summands);
    return c;
}

} // namespace

Catalog default_catalog(uint64_t p) {
    Catalog cat;
    cat.p = p;
    for (unsigned r = 1; r <= 4; ++r) {
        std::vector<SlopeData> types;
        enumerate_slope_types(r, types);
        for (const auto& data : types) {
            CatalogEntry e;
            e.name = slope_name(data);
            e.construction = slopes_construction(data.summands);
            e.m_max = 3;
            e.expect.slopes = data.slopes();
            e.expect.s = s_height(data, data.codim(), data.dim());
            cat.entries.push_back(e);
            for (uint64_t seed = 1; seed <= 2; ++seed) {
                CatalogEntry t;
                t.name = e.name + "_tw" + std::to_string(seed);
                t.construction.type = Construction::Type::Twist;
                t.construction.parts.push_back(e.construction);
                t.construction.seed = seed;
                t.m_max = 3;
                cat.entries.push_back(t);
            }
        }
    }
    // relative contexts
    {
        CatalogEntry e;
        e.name = "hom_ss_ss";
        e.construction.type = Construction::Type::DirectSum;
        e.construction.parts = {slopes_construction({{1, 1, 1}}), slopes_construction({{1, 1, 1}})};
        e.constraint.kind = ConstraintSpec::Kind::HomBlock;
        e.constraint.r1 = 2;
        e.constraint.r2 = 2;
        e.m_max = 3;
        cat.entries.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "hom_et_mu";
        e.construction.type = Construction::Type::DirectSum;
        e.construction.parts = {slopes_construction({{1, 0, 1}}), slopes_construction({{0, 1, 1}})};
        e.constraint.kind = ConstraintSpec::Kind::HomBlock;
        e.constraint.r1 = 1;
        e.constraint.r2 = 1;
        e.m_max = 3;
        cat.entries.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "par_ord_ss";
        e.construction.type = Construction::Type::DirectSum;
        e.construction.parts = {slopes_construction({{1, 0, 1}, {0, 1, 1}}),
                                slopes_construction({{1, 1, 1}})};
        e.constraint.kind = ConstraintSpec::Kind::Parabolic;
        e.constraint.ranks = {2};
        e.m_max = 3;
        cat.entries.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "pol_ss";
        e.construction.type = Construction::Type::Pairing;
        e.construction.parts = {slopes_construction({{1, 1, 1}})};
        e.construction.alternating = true;
        e.m_max = 3;
        cat.entries.push_back(e);
    }
    return cat;
}

} // namespace dmod

#include "dmod/centralizer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace dmod {

LieConstraint LieConstraint::full() { return LieConstraint{}; }

LieConstraint LieConstraint::hom_block(unsigned r1, unsigned r2) {
    LieConstraint c;
    c.kind = Kind::HomBlock;
    c.r1 = r1;
    c.r2 = r2;
    return c;
}

LieConstraint LieConstraint::parabolic(std::vector<unsigned> ranks) {
    LieConstraint c;
    c.kind = Kind::Parabolic;
    std::sort(ranks.begin(), ranks.end());
    c.filtration = std::move(ranks);
    return c;
}

LieConstraint LieConstraint::pairing(GRMatrix gram, bool alternating) {
    LieConstraint c;
    c.kind = Kind::Pairing;
    c.J = std::move(gram);
    c.alternating = alternating;
    return c;
}

bool LieConstraint::plateau_rule_applies(uint64_t p) const {
    switch (kind) {
        case Kind::Full:
        case Kind::HomBlock:
        case Kind::Parabolic: return true;
        case Kind::Pairing: return p > 2;
    }
    return false;
}

bool LieConstraint::entry_allowed(unsigned i, unsigned j) const {
    switch (kind) {
        case Kind::Full:
        case Kind::Pairing: return true;
        case Kind::HomBlock: return i < r1 && j >= r1;
        case Kind::Parabolic:
            for (unsigned k : filtration)
                if (j < k && i >= k) return false;
            return true;
    }
    return true;
}

std::vector<uint8_t> LieConstraint::canonical_bytes() const {
    std::vector<uint8_t> out;
    auto put = [&out](uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    };
    put(static_cast<uint64_t>(kind));
    switch (kind) {
        case Kind::Full: break;
        case Kind::HomBlock:
            put(r1);
            put(r2);
            break;
        case Kind::Parabolic:
            put(filtration.size());
            for (unsigned k : filtration) put(k);
            break;
        case Kind::Pairing:
            put(alternating ? 1 : 0);
            put(J.rows);
            for (const GRElem& x : J.a)
                for (uint64_t v : x.c) put(v);
            break;
    }
    return out;
}

uint64_t LieConstraint::hash() const {
    auto b = canonical_bytes();
    return fnv1a64(b.data(), b.size());
}

std::string LieConstraint::describe() const {
    switch (kind) {
        case Kind::Full: return "full";
        case Kind::HomBlock:
            return "hom_block(" + std::to_string(r1) + "," + std::to_string(r2) + ")";
        case Kind::Parabolic: {
            std::string s = "parabolic(";
            for (size_t i = 0; i < filtration.size(); ++i)
                s += (i ? "," : "") + std::to_string(filtration[i]);
            return s + ")";
        }
        case Kind::Pairing: return alternating ? "pairing(alternating)" : "pairing(symmetric)";
    }
    return "?";
}

void validate_constraint(const LieConstraint& cst, const DieudonneModule& D) {
    switch (cst.kind) {
        case LieConstraint::Kind::Full: return;
        case LieConstraint::Kind::HomBlock:
            if (cst.r1 + cst.r2 != D.r) throw Error("hom block sizes must sum to the height");
            return;
        case LieConstraint::Kind::Parabolic:
            for (unsigned k : cst.filtration)
                if (k == 0 || k >= D.r) throw Error("filtration rank out of range");
            return;
        case LieConstraint::Kind::Pairing: {
            if (cst.J.rows != D.r || cst.J.cols != D.r) throw Error("gram matrix size mismatch");
            if (cst.J.ring != D.A.ring) throw Error("gram matrix over wrong ring");
            GRMatrix lhs = transpose(D.A) * cst.J * D.A;
            GRMatrix rhs = scalar_mul(D.A.ring->from_int(D.p), map_frobenius(cst.J));
            if (!(lhs == rhs))
                throw Error("pairing incompatible with the module: A^T J A != p sigma(J)");
            GRMatrix flip = transpose(cst.J);
            if (cst.alternating) {
                for (auto& x : flip.a) x = -x;
            }
            if (!(flip == cst.J)) throw Error("gram matrix has the wrong symmetry");
            return;
        }
    }
}

PointCountCache::PointCountCache(const std::string& path) : path_(path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string mh, ch;
        unsigned m = 0, N = 0, lg = 0;
        if (ss >> mh >> m >> N >> ch >> lg)
            map_[{std::stoull(mh, nullptr, 16), m, N, std::stoull(ch, nullptr, 16)}] = lg;
    }
}

std::optional<unsigned> PointCountCache::lookup(uint64_t mh, unsigned m, unsigned N,
                                                uint64_t ch) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = map_.find({mh, m, N, ch});
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void PointCountCache::record(uint64_t mh, unsigned m, unsigned N, uint64_t ch,
                             unsigned log_size) {
    std::lock_guard<std::mutex> lk(mu_);
    auto key = std::make_tuple(mh, m, N, ch);
    if (map_.count(key)) return;
    map_[key] = log_size;
    if (!path_.empty()) {
        std::ofstream out(path_, std::ios::app);
        out << to_hex(mh) << ' ' << m << ' ' << N << ' ' << to_hex(ch) << ' ' << log_size
            << '\n';
    }
}

size_t PointCountCache::size() const {
    std::lock_guard<std::mutex> lk(mu_);
    return map_.size();
}

namespace {

// coords of g * x in GR(p^m, N): shift the power basis and fold the top
// coefficient through the monic modulus
void shift_mul(const GaloisRing& R, std::vector<uint64_t>& x) {
    const Zpm& zr = R.zr();
    unsigned N = R.n();
    uint64_t top = x[N - 1];
    for (unsigned i = N - 1; i >= 1; --i) x[i] = x[i - 1];
    x[0] = 0;
    if (top) {
        const auto& f = R.modulus();
        for (unsigned j = 0; j < N; ++j)
            if (f[j]) x[j] = zr.sub(x[j], zr.mul(top, f[j]));
    }
}

} // namespace

GRMatrix EndSystem::decode(const std::vector<uint64_t>& coords) const {
    GRMatrix E = GRMatrix::zero(ring, r, r);
    for (size_t s = 0; s < support.size(); ++s) {
        std::vector<uint64_t> c(coords.begin() + s * N, coords.begin() + (s + 1) * N);
        E.at(support[s].first, support[s].second) = ring->from_coords(std::move(c));
    }
    return E;
}

EndSystem build_end_system(const DieudonneModule& D, unsigned m, unsigned N,
                           const LieConstraint& cst) {
    if (m > D.m_work) throw PrecisionError("level exceeds working precision");
    if (N % D.e) throw Error("point field degree must be a multiple of the base degree");
    validate_constraint(cst, D);
    const unsigned r = D.r;
    RingPtr RN = GaloisRing::get(D.p, m, N);
    RingPtr Re = GaloisRing::get(D.p, m, D.e);

    GRMatrix Am(RN, r, r), Bm(RN, r, r), Jm(RN, r, r);
    {
        GRMatrix Ae = map_reduce_precision(D.A, m), Be = map_reduce_precision(D.B, m);
        Am = map_embed(Ae, RN);
        Bm = map_embed(Be, RN);
        if (cst.kind == LieConstraint::Kind::Pairing)
            Jm = map_embed(map_reduce_precision(cst.J, m), RN);
    }

    EndSystem sys;
    sys.ring = RN;
    sys.r = r;
    sys.N = N;
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j)
            if (cst.entry_allowed(i, j)) sys.support.emplace_back(i, j);
    std::vector<int> sidx(size_t(r) * r, -1);
    for (size_t s = 0; s < sys.support.size(); ++s)
        sidx[size_t(sys.support[s].first) * r + sys.support[s].second] = static_cast<int>(s);

    const Zpm& zr = RN->zr();
    const bool pairing = cst.kind == LieConstraint::Kind::Pairing;
    const unsigned nfam = pairing ? 3 : 2;
    const unsigned rows = nfam * r * r * N;
    const unsigned cols = static_cast<unsigned>(sys.support.size()) * N;
    sys.mat = ZpmMatrix(zr, rows, cols);

    // tables: for a ring element a, columns gpow[t] = coords(g^t a),
    // spow[t] = coords(sigma(g)^t a), sipow[t] = coords(sigma^{-1}(g)^t a)
    auto gcols = [&](const GRElem& a) {
        std::vector<std::vector<uint64_t>> cols_(N);
        cols_[0] = a.c;
        for (unsigned t = 1; t < N; ++t) {
            cols_[t] = cols_[t - 1];
            shift_mul(*RN, cols_[t]);
        }
        return cols_;
    };
    auto twisted_cols = [&](const GRElem& a, bool inverse) {
        std::vector<std::vector<uint64_t>> cols_(N);
        for (unsigned t = 0; t < N; ++t) {
            GRElem w = RN->from_coords(inverse ? RN->sigma_inv_gen_pow(t) : RN->sigma_gen_pow(t));
            cols_[t] = RN->mul(a, w).c;
        }
        return cols_;
    };

    auto add_block = [&](unsigned row_base, int sign, unsigned unk_i, unsigned unk_j,
                         const std::vector<std::vector<uint64_t>>& cols_) {
        int s = sidx[size_t(unk_i) * r + unk_j];
        if (s < 0) return; // constrained-to-zero entries contribute nothing
        unsigned col_base = static_cast<unsigned>(s) * N;
        for (unsigned t = 0; t < N; ++t) {
            const auto& col = cols_[t];
            for (unsigned u = 0; u < N; ++u) {
                if (!col[u]) continue;
                uint64_t& cell = sys.mat.at(row_base + u, col_base + t);
                cell = sign > 0 ? zr.add(cell, col[u]) : zr.sub(cell, col[u]);
            }
        }
    };

    // cache the per-entry column tables
    std::map<const GRElem*, std::vector<std::vector<uint64_t>>> memo_g, memo_s, memo_si;
    auto get_g = [&](const GRElem& a) -> const std::vector<std::vector<uint64_t>>& {
        auto it = memo_g.find(&a);
        if (it == memo_g.end()) it = memo_g.emplace(&a, gcols(a)).first;
        return it->second;
    };
    auto get_s = [&](const GRElem& a) -> const std::vector<std::vector<uint64_t>>& {
        auto it = memo_s.find(&a);
        if (it == memo_s.end()) it = memo_s.emplace(&a, twisted_cols(a, false)).first;
        return it->second;
    };
    auto get_si = [&](const GRElem& a) -> const std::vector<std::vector<uint64_t>>& {
        auto it = memo_si.find(&a);
        if (it == memo_si.end()) it = memo_si.emplace(&a, twisted_cols(a, true)).first;
        return it->second;
    };

    for (unsigned i = 0; i < r; ++i)
        for (unsigned k = 0; k < r; ++k) {
            unsigned row_phi = ((0u * r + i) * r + k) * N;
            unsigned row_theta = ((1u * r + i) * r + k) * N;
            for (unsigned j = 0; j < r; ++j) {
                // (E A)_{ik} - (A sigma(E))_{ik} = 0
                if (!Am.at(j, k).is_zero()) add_block(row_phi, +1, i, j, get_g(Am.at(j, k)));
                if (!Am.at(i, j).is_zero()) add_block(row_phi, -1, j, k, get_s(Am.at(i, j)));
                // (E B)_{ik} - (B sigma^{-1}(E))_{ik} = 0
                if (!Bm.at(j, k).is_zero()) add_block(row_theta, +1, i, j, get_g(Bm.at(j, k)));
                if (!Bm.at(i, j).is_zero()) add_block(row_theta, -1, j, k, get_si(Bm.at(i, j)));
            }
            if (pairing) {
                unsigned row_pair = ((2u * r + i) * r + k) * N;
                for (unsigned j = 0; j < r; ++j) {
                    // (E^T J + J E)_{ik} = 0
                    if (!Jm.at(j, k).is_zero()) add_block(row_pair, +1, j, i, get_g(Jm.at(j, k)));
                    if (!Jm.at(i, j).is_zero()) add_block(row_pair, +1, j, k, get_g(Jm.at(i, j)));
                }
            }
        }
    return sys;
}

unsigned end_log_size(const DieudonneModule& D, unsigned m, unsigned N,
                      const LieConstraint& cst, PointCountCache* cache) {
    uint64_t mh = D.hash(), ch = cst.hash();
    if (cache) {
        auto hit = cache->lookup(mh, m, N, ch);
        if (hit) return *hit;
    }
    EndSystem sys = build_end_system(D, m, N, cst);
    unsigned lg = kernel_log_size(sys.mat);
    if (cache) cache->record(mh, m, N, ch, lg);
    return lg;
}

std::vector<GRMatrix> sample_end_solutions(const DieudonneModule& D, unsigned m, unsigned N,
                                           const LieConstraint& cst, unsigned count,
                                           uint64_t seed) {
    EndSystem sys = build_end_system(D, m, N, cst);
    HowellForm hf = howell(sys.mat);
    std::vector<GRMatrix> out;
    out.reserve(count);
    for (unsigned k = 0; k < count; ++k)
        out.push_back(sys.decode(kernel_sample(hf, seed + 0x9e3779b97f4a7c15ULL * k)));
    return out;
}

int extract_growth(const std::function<unsigned(unsigned)>& f, unsigned e,
                   const ExtractionConfig& cfg, WindowEvidence* ev,
                   std::pair<unsigned, unsigned>* hint) {
    // Window schedule: base points and steps in units of e. Component counts
    // are periodic in N with period up to the lcm of the Frobenius orbit
    // sizes on the component set; the step set covers the periods seen in
    // practice (orbit sizes through 5 combine into periods up to 20).
    static const std::pair<unsigned, unsigned> schedule[] = {
        {1, 1},  {1, 2},  {2, 2},  {1, 3},  {2, 3},  {4, 2},  {1, 4},
        {2, 4},  {1, 5},  {2, 5},  {4, 3},  {2, 6},  {8, 2},  {8, 3},
        {1, 10}, {2, 10}, {1, 12}, {2, 12}, {1, 20}, {2, 20},
    };
    std::vector<std::pair<unsigned, unsigned>> attempts(std::begin(schedule),
                                                        std::end(schedule));
    if (hint && hint->first) attempts.insert(attempts.begin(), *hint);
    std::vector<std::pair<unsigned, unsigned>> seen;
    for (auto [n0m, d0] : attempts) {
        unsigned N0 = n0m * e, step = d0 * e;
        // cross-validation point: two more steps past the window when that
        // stays cheap, one otherwise
        unsigned cross = N0 + 5 * step <= std::min(cfg.n_cap, 36u) ? 5 : 4;
        if (N0 + cross * step > cfg.n_cap) continue;
        unsigned v[4];
        v[0] = f(N0);
        v[1] = f(N0 + step);
        v[2] = f(N0 + 2 * step);
        seen.emplace_back(N0, v[0]);
        seen.emplace_back(N0 + step, v[1]);
        seen.emplace_back(N0 + 2 * step, v[2]);
        long long d1 = (long long)v[1] - v[0], d2 = (long long)v[2] - v[1];
        if (d1 != d2 || d1 < 0 || d1 % step) continue; // bail before the larger points
        v[3] = f(N0 + 3 * step);
        seen.emplace_back(N0 + 3 * step, v[3]);
        if ((long long)v[3] - v[2] != d1) continue;
        long long g = d1 / step;
        unsigned vx = f(N0 + cross * step);
        seen.emplace_back(N0 + cross * step, vx);
        if ((long long)vx - v[3] != (cross - 3) * step * g) continue;
        if (ev) {
            ev->n0 = N0;
            ev->delta = step;
            ev->counts = seen;
            ev->accepted = true;
        }
        if (hint) *hint = {n0m, d0};
        return static_cast<int>(g);
    }
    if (ev) {
        ev->counts = seen;
        ev->accepted = false;
    }
    std::string msg = "point counts did not stabilize within the schedule; evidence:";
    for (auto [N, lg] : seen) msg += " (" + std::to_string(N) + "," + std::to_string(lg) + ")";
    throw ExtractionError(msg);
}

int gamma(const DieudonneModule& D, unsigned m, const LieConstraint& cst,
          const ExtractionConfig& cfg, PointCountCache* cache, WindowEvidence* ev,
          std::pair<unsigned, unsigned>* hint) {
    if (m == 0) return 0;
    auto f = [&](unsigned N) { return end_log_size(D, m, N, cst, cache); };
    return extract_growth(f, D.e, cfg, ev, hint);
}

CentralizingSequence gamma_sequence(const DieudonneModule& D, unsigned m_max,
                                    const LieConstraint& cst, const ExtractionConfig& cfg,
                                    PointCountCache* cache) {
    CentralizingSequence seq;
    seq.g.assign(m_max + 1, 0);
    seq.evidence.resize(m_max + 1);
    std::pair<unsigned, unsigned> hint{0, 0};
    for (unsigned m = 1; m <= m_max; ++m)
        seq.g[m] = gamma(D, m, cst, cfg, cache, &seq.evidence[m], &hint);
    for (unsigned m = 1; m <= m_max; ++m)
        if (seq.g[m] < seq.g[m - 1])
            throw ExtractionError("computed sequence is not monotone; extraction unreliable");
    for (unsigned m = 2; m <= m_max; ++m)
        if (seq.g[m] - seq.g[m - 1] > seq.g[m - 1] - seq.g[m - 2])
            throw ExtractionError("computed increments are not decreasing; extraction unreliable");
    if (cst.plateau_rule_applies(D.p)) {
        for (unsigned i = 1; i + 1 <= m_max; ++i)
            if (seq.g[i + 1] == seq.g[i]) {
                seq.n = i;
                break;
            }
    }
    return seq;
}

unsigned i_number(const CentralizingSequence& seq, unsigned c, unsigned d) {
    if (c == 0 || d == 0) return 0;
    for (unsigned i = 1; i + 1 < seq.g.size(); ++i)
        if (seq.g[i + 1] == seq.g[i]) return i;
    throw InconclusiveError("no plateau within m_max; raise m_max");
}

unsigned restriction_image_log_size(const DieudonneModule& D, unsigned l, unsigned i,
                                    unsigned N, const LieConstraint& cst,
                                    PointCountCache* cache) {
    if (!(l > i && i >= 1)) throw Error("restriction needs l > i >= 1");
    // solutions at level l congruent to 0 mod p^i correspond bijectively to
    // solutions at level l - i, so the image size divides out exactly
    return end_log_size(D, l, N, cst, cache) - end_log_size(D, l - i, N, cst, cache);
}

int restriction_image_growth(const DieudonneModule& D, unsigned l, unsigned i,
                             const LieConstraint& cst, const ExtractionConfig& cfg,
                             PointCountCache* cache) {
    auto f = [&](unsigned N) { return restriction_image_log_size(D, l, i, N, cst, cache); };
    return extract_growth(f, D.e, cfg, nullptr);
}

CentralizingSequence relative_suite(const DieudonneModule& D, const LieConstraint& cst,
                                    unsigned m_max, const ExtractionConfig& cfg,
                                    PointCountCache* cache) {
    if (cst.is_full()) throw Error("relative suite needs a proper constraint");
    return gamma_sequence(D, m_max, cst, cfg, cache);
}

} // namespace dmod

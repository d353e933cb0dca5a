#include "dmod/galois_ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace dmod {

std::string to_hex(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

namespace {

constexpr unsigned kMaxDegree = 64;

bool is_prime(uint64_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// ---- dense polynomials over F_p, coefficients constant-term first ----

using FpPoly = std::vector<uint64_t>;

void fp_trim(FpPoly& f) {
    while (f.size() > 1 && f.back() == 0) f.pop_back();
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& f, uint64_t p) {
    std::vector<uint64_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    size_t n = f.size() - 1; // f monic of degree n
    for (size_t k = c.size(); k-- > n;) {
        uint64_t t = c[k];
        if (!t) continue;
        c[k] = 0;
        for (size_t j = 0; j < n; ++j) c[k - n + j] = (c[k - n + j] + (p - f[j] % p) * t) % p;
    }
    c.resize(n, 0);
    return c;
}

FpPoly fp_pow_p(FpPoly a, uint64_t p, const FpPoly& f) {
    // a^p by square-and-multiply (p is small)
    FpPoly r{1};
    r.resize(f.size() - 1, 0);
    uint64_t e = p;
    while (e) {
        if (e & 1) r = fp_mulmod(r, a, f, p);
        if (e >>= 1) a = fp_mulmod(a, a, f, p);
    }
    return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, uint64_t p) {
    fp_trim(a);
    size_t db = b.size() - 1;
    uint64_t lead_inv = 1;
    {
        uint64_t l = b.back() % p, e = p - 2, r = 1;
        while (e) {
            if (e & 1) r = r * l % p;
            l = l * l % p;
            e >>= 1;
        }
        lead_inv = r;
    }
    while (a.size() > db && !(a.size() == 1 && a[0] == 0)) {
        size_t da = a.size() - 1;
        if (da < db) break;
        uint64_t t = a.back() * lead_inv % p;
        if (t)
            for (size_t j = 0; j <= db; ++j)
                a[da - db + j] = (a[da - db + j] + (p - b[j] * t % p)) % p;
        a.pop_back();
        if (a.empty()) break;
        fp_trim(a);
        if (a.size() == 1 && a[0] == 0) break;
    }
    if (a.empty()) a.assign(1, 0);
    fp_trim(a);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint64_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!(b.size() == 1 && b[0] == 0)) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool fp_is_irreducible(const FpPoly& f, uint64_t p) {
    size_t n = f.size() - 1;
    if (n == 1) return true;
    if (f[0] % p == 0) return false;
    // x^{p^n} == x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for prime l | n
    FpPoly x{0, 1};
    std::vector<FpPoly> frob(n + 1); // frob[k] = x^{p^k} mod f
    frob[0] = x;
    frob[0].resize(n, 0);
    for (size_t k = 1; k <= n; ++k) frob[k] = fp_pow_p(frob[k - 1], p, f);
    FpPoly top = frob[n];
    fp_trim(top);
    FpPoly xx = x;
    fp_trim(xx);
    if (top != xx) return false;
    for (size_t l = 2; l <= n; ++l) {
        if (n % l) continue;
        bool lp = true;
        for (size_t d = 2; d * d <= l; ++d)
            if (l % d == 0) { lp = false; break; }
        if (!lp) continue;
        FpPoly diff = frob[n / l];
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        FpPoly g = fp_gcd(f, diff, p);
        if (!(g.size() == 1 && g[0] != 0)) return false;
    }
    return true;
}

} // namespace

std::vector<uint64_t> canonical_modulus_mod_p(uint64_t p, unsigned n) {
    if (n == 1) return {0, 1}; // f = x
    // Scan monic candidates in lexicographic order of (c_0, ..., c_{n-1});
    // c_0 = 0 would make x a factor, so the scan starts at c_0 = 1.
    std::vector<uint64_t> c(n, 0);
    for (uint64_t c0 = 1; c0 < p; ++c0) {
        std::fill(c.begin(), c.end(), 0);
        c[0] = c0;
        for (;;) {
            FpPoly f(c.begin(), c.end());
            f.push_back(1);
            if (fp_is_irreducible(f, p)) return f;
            // odometer on (c_1, ..., c_{n-1}), last index fastest
            int i = static_cast<int>(n) - 1;
            while (i >= 1 && c[i] == p - 1) c[i--] = 0;
            if (i < 1) break;
            ++c[i];
        }
    }
    throw CapacityError("no irreducible polynomial found (degree too small?)");
}

// ---- ring construction ----

GaloisRing::GaloisRing(uint64_t p, unsigned m, unsigned n) : zr_(p, m), n_(n) {
    if (!is_prime(p)) throw CapacityError("p must be prime");
    if (m < 1) throw CapacityError("precision must be >= 1");
    if (n < 1 || n > kMaxDegree) throw CapacityError("residue degree out of range");

    std::vector<uint64_t> fbar = canonical_modulus_mod_p(p, n);
    modulus_.assign(fbar.begin(), fbar.end()); // canonical integer lift

    // sigma(g): the root of f congruent to g^p mod p (Hensel)
    if (n == 1) {
        frobenius_image_ = zero();
    } else {
        GRElem y = pow(generator(), p);
        for (;;) {
            // Newton step y <- y - f(y)/f'(y); f(y) has positive valuation,
            // f'(y) is a unit, precision doubles per step
            GRElem fy = zero(), dfy = zero();
            for (size_t k = modulus_.size(); k-- > 0;) {
                if (k >= 1) {
                    dfy = mul(dfy, y);
                    dfy = add(dfy, from_int(zr_.mul(zr_.reduce(k), modulus_[k] % zr_.q())));
                }
                fy = mul(fy, y);
                fy = add(fy, from_int(modulus_[k] % zr_.q()));
            }
            if (fy.is_zero()) break;
            y = sub(y, mul(fy, inv(dfy)));
        }
        frobenius_image_ = y;
    }

    // power tables for sigma(g)^t
    sigma_pow_.resize(n_);
    GRElem acc = one();
    for (unsigned t = 0; t < n_; ++t) {
        sigma_pow_[t] = acc.c;
        if (t + 1 < n_) acc = mul(acc, frobenius_image_);
    }

    // sigma^{-1}(g) = sigma^{n-1}(g)
    GRElem ginv = generator();
    for (unsigned k = 0; k + 1 < n_; ++k) ginv = frobenius(ginv);
    sigma_inv_pow_.resize(n_);
    acc = one();
    for (unsigned t = 0; t < n_; ++t) {
        sigma_inv_pow_[t] = acc.c;
        if (t + 1 < n_) acc = mul(acc, ginv);
    }
}

RingPtr GaloisRing::get(uint64_t p, unsigned m, unsigned n) {
    static std::mutex mu;
    static std::map<std::tuple<uint64_t, unsigned, unsigned>, RingPtr> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(p, m, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    RingPtr r(new GaloisRing(p, m, n));
    cache[key] = r;
    return r;
}

GRElem GaloisRing::zero() const { return GRElem{this, std::vector<uint64_t>(n_, 0)}; }

GRElem GaloisRing::one() const { return from_int(1); }

GRElem GaloisRing::from_int(uint64_t v) const {
    GRElem e = zero();
    e.c[0] = v % zr_.q();
    return e;
}

GRElem GaloisRing::from_coords(std::vector<uint64_t> coords) const {
    if (coords.size() != n_) throw Error("coordinate vector has wrong length");
    for (auto& v : coords) v %= zr_.q();
    return GRElem{this, std::move(coords)};
}

GRElem GaloisRing::generator() const {
    GRElem e = zero();
    if (n_ == 1) return e; // canonical modulus is x, so the generator is 0
    e.c[1] = 1;
    return e;
}

GRElem GaloisRing::add(const GRElem& a, const GRElem& b) const {
    GRElem r = a;
    for (unsigned i = 0; i < n_; ++i) r.c[i] = zr_.add(r.c[i], b.c[i]);
    return r;
}

GRElem GaloisRing::sub(const GRElem& a, const GRElem& b) const {
    GRElem r = a;
    for (unsigned i = 0; i < n_; ++i) r.c[i] = zr_.sub(r.c[i], b.c[i]);
    return r;
}

GRElem GaloisRing::neg(const GRElem& a) const {
    GRElem r = a;
    for (unsigned i = 0; i < n_; ++i) r.c[i] = zr_.neg(r.c[i]);
    return r;
}

GRElem GaloisRing::mul(const GRElem& a, const GRElem& b) const {
    std::vector<uint64_t> conv(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (!a.c[i]) continue;
        for (unsigned j = 0; j < n_; ++j) {
            if (!b.c[j]) continue;
            conv[i + j] = zr_.add(conv[i + j], zr_.mul(a.c[i], b.c[j]));
        }
    }
    // fold g^k for k >= n using the monic modulus
    for (unsigned k = 2 * n_ - 1; k-- > n_;) {
        uint64_t t = conv[k];
        if (!t) continue;
        conv[k] = 0;
        for (unsigned j = 0; j < n_; ++j) {
            if (!modulus_[j]) continue;
            conv[k - n_ + j] = zr_.sub(conv[k - n_ + j], zr_.mul(t, modulus_[j]));
        }
    }
    conv.resize(n_);
    return GRElem{this, std::move(conv)};
}

GRElem GaloisRing::mul_scalar(const GRElem& a, uint64_t s) const {
    s %= zr_.q();
    GRElem r = a;
    for (unsigned i = 0; i < n_; ++i) r.c[i] = zr_.mul(r.c[i], s);
    return r;
}

GRElem GaloisRing::pow(const GRElem& a, uint64_t e) const {
    GRElem r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        if (e >>= 1) b = mul(b, b);
    }
    return r;
}

bool GaloisRing::is_unit(const GRElem& a) const {
    for (uint64_t v : a.c)
        if (v % zr_.p()) return true;
    return false;
}

unsigned GaloisRing::val(const GRElem& a) const {
    unsigned v = zr_.m();
    for (uint64_t x : a.c) v = std::min(v, zr_.val(x));
    return v;
}

GRElem GaloisRing::inv(const GRElem& a) const {
    if (!is_unit(a)) throw NonUnitError("inverse of non-unit");
    // invert mod p by extended Euclid over F_p[x], then Newton-lift
    uint64_t p = zr_.p();
    FpPoly r0(modulus_.begin(), modulus_.end());
    for (auto& v : r0) v %= p;
    FpPoly r1(a.c.begin(), a.c.end());
    for (auto& v : r1) v %= p;
    fp_trim(r1);
    FpPoly t0{0}, t1{1};
    while (!(r1.size() == 1 && r1[0] == 0)) {
        // quotient of r0 by r1
        FpPoly q(std::max<size_t>(r0.size() - r1.size() + 1, 1), 0);
        FpPoly rem = r0;
        uint64_t lead = r1.back() % p, e = p - 2, li = 1;
        while (e) {
            if (e & 1) li = li * lead % p;
            lead = lead * lead % p;
            e >>= 1;
        }
        fp_trim(rem);
        while (rem.size() >= r1.size() && !(rem.size() == 1 && rem[0] == 0)) {
            size_t shift = rem.size() - r1.size();
            uint64_t coef = rem.back() * li % p;
            q[shift] = (q[shift] + coef) % p;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[shift + j] = (rem[shift + j] + (p - r1[j] * coef % p)) % p;
            fp_trim(rem);
            if (rem.size() == 1 && rem[0] == 0) break;
        }
        // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - q t1)
        FpPoly qt1(q.size() + t1.size() - 1, 0);
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < t1.size(); ++j) qt1[i + j] = (qt1[i + j] + q[i] * t1[j]) % p;
        FpPoly nt(std::max(t0.size(), qt1.size()), 0);
        for (size_t i = 0; i < nt.size(); ++i) {
            uint64_t x = i < t0.size() ? t0[i] : 0;
            uint64_t y = i < qt1.size() ? qt1[i] : 0;
            nt[i] = (x + p - y % p) % p;
        }
        FpPoly fmod(modulus_.begin(), modulus_.end());
        for (auto& v : fmod) v %= p;
        nt = fp_mod(nt, fmod, p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    // r0 is a nonzero constant; t0 / r0 inverts a mod p
    uint64_t cst = r0[0] % p, e = p - 2, ci = 1;
    while (e) {
        if (e & 1) ci = ci * cst % p;
        cst = cst * cst % p;
        e >>= 1;
    }
    GRElem x = zero();
    for (size_t i = 0; i < t0.size() && i < n_; ++i) x.c[i] = t0[i] * ci % p;
    // Newton: x <- x(2 - a x)
    for (unsigned prec = 1; prec < zr_.m(); prec *= 2)
        x = mul(x, sub(from_int(2), mul(a, x)));
    return x;
}

std::vector<uint64_t> GaloisRing::apply_matrix(const std::vector<std::vector<uint64_t>>& cols,
                                               const GRElem& a) const {
    std::vector<uint64_t> out(n_, 0);
    for (unsigned t = 0; t < n_; ++t) {
        uint64_t s = a.c[t];
        if (!s) continue;
        const auto& col = cols[t];
        for (unsigned i = 0; i < n_; ++i) out[i] = zr_.add(out[i], zr_.mul(s, col[i]));
    }
    return out;
}

GRElem GaloisRing::frobenius(const GRElem& a) const {
    return GRElem{this, apply_matrix(sigma_pow_, a)};
}

GRElem GaloisRing::frobenius_inv(const GRElem& a) const {
    return GRElem{this, apply_matrix(sigma_inv_pow_, a)};
}

GRElem frobenius(const GRElem& x) { return x.R->frobenius(x); }
GRElem frobenius_inv(const GRElem& x) { return x.R->frobenius_inv(x); }
GRElem inv(const GRElem& x) { return x.R->inv(x); }
unsigned val(const GRElem& x) { return x.R->val(x); }

GRElem reduce_precision(const GRElem& x, unsigned m2) {
    if (m2 > x.R->m()) throw PrecisionError("reduce_precision cannot raise precision");
    RingPtr T = GaloisRing::get(x.R->p(), m2, x.R->n());
    std::vector<uint64_t> c = x.c;
    for (auto& v : c) v %= T->q();
    return T->from_coords(std::move(c));
}

GRElem exact_div_p(const GRElem& x, unsigned k) {
    if (k == 0) return x;
    if (k >= x.R->m()) throw PrecisionError("exact_div_p would leave no precision");
    uint64_t pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= x.R->p();
    std::vector<uint64_t> c = x.c;
    for (auto& v : c) {
        if (v % pk) throw DivisibilityError("exact_div_p on non-divisible element");
        v /= pk;
    }
    RingPtr T = GaloisRing::get(x.R->p(), x.R->m() - k, x.R->n());
    return T->from_coords(std::move(c));
}

// ---- embeddings ----

namespace {

// big unsigned as little-endian u32 limbs; just enough for (p^N - 1) / 2
struct BigU {
    std::vector<uint32_t> limb{0};
    void mul_small(uint64_t s) {
        uint64_t carry = 0;
        for (auto& l : limb) {
            uint64_t v = uint64_t(l) * s + carry;
            l = static_cast<uint32_t>(v);
            carry = v >> 32;
        }
        while (carry) {
            limb.push_back(static_cast<uint32_t>(carry));
            carry >>= 32;
        }
    }
    void sub1() {
        for (auto& l : limb) {
            if (l) { --l; break; }
            l = 0xffffffffu;
        }
    }
    void half() {
        uint32_t carry = 0;
        for (size_t i = limb.size(); i-- > 0;) {
            uint32_t cur = limb[i];
            limb[i] = (cur >> 1) | (carry << 31);
            carry = cur & 1;
        }
    }
    std::vector<bool> bits() const {
        std::vector<bool> b;
        for (size_t i = 0; i < limb.size(); ++i)
            for (int j = 0; j < 32; ++j) b.push_back((limb[i] >> j) & 1);
        while (!b.empty() && !b.back()) b.pop_back();
        return b;
    }
};

using KPoly = std::vector<GRElem>; // dense, constant first, over a field GR(p,1,N)

void kp_trim(KPoly& f) {
    while (f.size() > 1 && f.back().is_zero()) f.pop_back();
}

KPoly kp_mul(const GaloisRing& K, const KPoly& a, const KPoly& b) {
    KPoly c(a.size() + b.size() - 1, K.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    }
    return c;
}

KPoly kp_mod(const GaloisRing& K, KPoly a, const KPoly& f) {
    kp_trim(a);
    size_t df = f.size() - 1;
    GRElem li = K.inv(f.back());
    while (a.size() > df) {
        GRElem t = a.back() * li;
        size_t shift = a.size() - 1 - df;
        if (!t.is_zero())
            for (size_t j = 0; j < f.size(); ++j) a[shift + j] = a[shift + j] - t * f[j];
        a.pop_back();
        if (a.empty()) break;
        kp_trim(a);
    }
    if (a.empty()) a.assign(1, K.zero());
    return a;
}

KPoly kp_powmod(const GaloisRing& K, KPoly a, const std::vector<bool>& ebits, const KPoly& f) {
    KPoly r{K.one()};
    a = kp_mod(K, std::move(a), f);
    for (size_t i = ebits.size(); i-- > 0;) {
        r = kp_mod(K, kp_mul(K, r, r), f);
        if (ebits[i]) r = kp_mod(K, kp_mul(K, r, a), f);
    }
    return r;
}

KPoly kp_gcd(const GaloisRing& K, KPoly a, KPoly b) {
    kp_trim(a);
    kp_trim(b);
    while (!(b.size() == 1 && b[0].is_zero())) {
        KPoly r = kp_mod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool kp_is_one_deg(const KPoly& f) { return f.size() == 2; }

// One root of a squarefree monic f that splits completely over K.
// Cantor-Zassenhaus splitting with a fixed seed stream keeps this
// deterministic; the caller canonicalizes by taking the lex-least conjugate.
GRElem kp_find_root(const GaloisRing& K, KPoly f) {
    kp_trim(f);
    GRElem lead_inv = K.inv(f.back());
    for (auto& c : f) c = c * lead_inv;
    Rng rng(0x5eedULL);
    while (!kp_is_one_deg(f)) {
        size_t d = f.size() - 1;
        KPoly a(d, K.zero());
        for (size_t i = 0; i < d; ++i) {
            std::vector<uint64_t> coords(K.n());
            for (auto& v : coords) v = rng.below(K.p());
            a[i] = K.from_coords(std::move(coords));
        }
        kp_trim(a);
        if (a.size() == 1 && a[0].is_zero()) continue;
        KPoly h;
        if (K.p() == 2) {
            // trace map over F_2: a + a^2 + ... + a^{2^{N-1}}
            KPoly t = kp_mod(K, a, f), acc = t;
            for (unsigned i = 1; i < K.n(); ++i) {
                t = kp_mod(K, kp_mul(K, t, t), f);
                acc.resize(std::max(acc.size(), t.size()), K.zero());
                for (size_t j = 0; j < t.size(); ++j) acc[j] = acc[j] + t[j];
            }
            h = std::move(acc);
        } else {
            BigU e; // (p^N - 1) / 2
            e.limb = {1};
            for (unsigned i = 0; i < K.n(); ++i) e.mul_small(K.p());
            e.sub1();
            e.half();
            h = kp_powmod(K, a, e.bits(), f);
            h[0] = h[0] - K.one();
        }
        kp_trim(h);
        KPoly g = kp_gcd(K, f, h);
        size_t dg = g.size() - 1;
        if (dg == 0 || dg == d) continue;
        // keep the smaller factor and renormalize monic
        KPoly keep;
        if (dg <= d - dg) {
            keep = std::move(g);
        } else {
            // f / g by repeated subtraction is just kp division; compute via
            // quotient of f by g
            KPoly rem = f, quo(d - dg + 1, K.zero());
            GRElem gli = K.inv(g.back());
            kp_trim(rem);
            while (rem.size() > dg) {
                GRElem t = rem.back() * gli;
                size_t shift = rem.size() - 1 - dg;
                quo[shift] = t;
                for (size_t j = 0; j < g.size(); ++j) rem[shift + j] = rem[shift + j] - t * g[j];
                rem.pop_back();
                kp_trim(rem);
            }
            keep = std::move(quo);
            kp_trim(keep);
        }
        GRElem li = K.inv(keep.back());
        for (auto& c : keep) c = c * li;
        f = std::move(keep);
    }
    return -f[0];
}

struct EmbKey {
    uint64_t p;
    unsigned m, nsrc, ntgt;
    bool operator<(const EmbKey& o) const {
        return std::tie(p, m, nsrc, ntgt) < std::tie(o.p, o.m, o.nsrc, o.ntgt);
    }
};

// image of the source generator in the target ring, cached
GRElem embedding_image(const GaloisRing& S, const RingPtr& T) {
    static std::mutex mu;
    static std::map<EmbKey, GRElem> cache;
    EmbKey key{S.p(), S.m(), S.n(), T->n()};
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    RingPtr Kp = GaloisRing::get(S.p(), 1, T->n());
    const GaloisRing& K = *Kp;
    // roots of the source modulus mod p inside the target residue field
    KPoly fbar;
    for (uint64_t coef : S.modulus()) fbar.push_back(K.from_int(coef % S.p()));
    GRElem root = kp_find_root(K, fbar);
    std::vector<GRElem> conj{root};
    for (unsigned i = 1; i < S.n(); ++i) conj.push_back(K.frobenius(conj.back()));
    GRElem best = conj[0];
    for (const auto& r : conj)
        if (r.c < best.c) best = r;

    // Hensel-lift the chosen residue root against the lifted source modulus
    GRElem y = T->from_coords(best.c);
    for (;;) {
        GRElem fy = T->zero(), dfy = T->zero();
        for (size_t k = S.modulus().size(); k-- > 0;) {
            if (k >= 1) {
                dfy = T->mul(dfy, y);
                dfy = T->add(dfy, T->from_int(T->zr().mul(T->zr().reduce(k),
                                                          S.modulus()[k] % T->q())));
            }
            fy = T->mul(fy, y);
            fy = T->add(fy, T->from_int(S.modulus()[k] % T->q()));
        }
        if (fy.is_zero()) break;
        y = T->sub(y, T->mul(fy, T->inv(dfy)));
    }

    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, y);
    return y;
}

} // namespace

GRElem embed(const GRElem& x, const RingPtr& target) {
    const GaloisRing& S = *x.R;
    if (S.p() != target->p() || S.m() != target->m())
        throw EmbeddingError("embedding requires same p and same precision");
    if (target->n() % S.n() != 0)
        throw EmbeddingError("source degree does not divide target degree");
    if (S.n() == target->n() && S.modulus() == target->modulus())
        return target->from_coords(x.c);
    if (S.n() == 1) return target->from_int(x.c[0]);
    GRElem img = embedding_image(S, target);
    // Horner in the target ring
    GRElem acc = target->zero();
    for (size_t i = S.n(); i-- > 0;)
        acc = target->add(target->mul(acc, img), target->from_int(x.c[i]));
    return acc;
}

} // namespace dmod

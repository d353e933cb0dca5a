#ifndef DMOD_RESIDUES_HPP
#define DMOD_RESIDUES_HPP

#include <cstdint>

#include "dmod/util.hpp"

namespace dmod {

// Arithmetic on canonical representatives of Z/p^m, p^m < 2^62.
// p = 2 reduces with a mask; odd p uses Barrett reduction with a
// precomputed reciprocal so the hot elimination loops avoid hardware div.
class Zpm {
  public:
    Zpm() = default;
    Zpm(uint64_t p, unsigned m) : p_(p), m_(m) {
        q_ = 1;
        for (unsigned i = 0; i < m; ++i) {
            if (q_ > (uint64_t(1) << 62) / p) throw CapacityError("p^m exceeds 2^62");
            q_ *= p;
        }
        pow2_ = (q_ & (q_ - 1)) == 0;
        mask_ = q_ - 1;
        small_ = q_ < (uint64_t(1) << 31);
        if (!pow2_) {
            rcp_ = (~static_cast<unsigned __int128>(0)) / q_;
            rcp64_ = (~uint64_t(0)) / q_;
        }
        ppow_.resize(m_ + 1);
        ppow_[0] = 1;
        for (unsigned i = 1; i <= m_; ++i) ppow_[i] = ppow_[i - 1] * p_;
    }

    uint64_t p() const { return p_; }
    unsigned m() const { return m_; }
    uint64_t q() const { return q_; }
    uint64_t ppow(unsigned k) const { return ppow_[k]; }

    uint64_t reduce(unsigned __int128 x) const {
        if (pow2_) return static_cast<uint64_t>(x) & mask_;
        if (small_ && x < (static_cast<unsigned __int128>(1) << 62)) return reduce64(uint64_t(x));
        // floor(x / q) via reciprocal, then one correction step
        unsigned __int128 qhat = mulhi(x, rcp_);
        uint64_t r = static_cast<uint64_t>(x - qhat * q_);
        while (r >= q_) r -= q_;
        return r;
    }
    // Barrett for 64-bit x; valid whenever x fits a u64
    uint64_t reduce64(uint64_t x) const {
        if (pow2_) return x & mask_;
        uint64_t qhat =
            static_cast<uint64_t>((static_cast<unsigned __int128>(x) * rcp64_) >> 64);
        uint64_t r = x - qhat * q_;
        while (r >= q_) r -= q_;
        return r;
    }
    uint64_t add(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + q_ - b; }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : q_ - a; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        if (small_) return reduce64(a * b); // both < 2^31, product < 2^62
        return reduce(static_cast<unsigned __int128>(a) * b);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1 % q_;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    // p-adic valuation of the canonical representative; val(0) = m.
    unsigned val(uint64_t a) const {
        if (a == 0) return m_;
        unsigned v = 0;
        while (a % p_ == 0) { a /= p_; ++v; }
        return v;
    }
    bool is_unit(uint64_t a) const { return a % p_ != 0; }
    // inverse of a unit via Newton lifting of the mod-p inverse
    uint64_t inv(uint64_t a) const {
        if (!is_unit(a)) throw NonUnitError("inverse of non-unit residue");
        uint64_t x = inv_mod_p(a % p_);
        // x <- x(2 - a x) doubles the precision each step
        for (unsigned prec = 1; prec < m_; prec *= 2) x = mul(x, sub(2 % q_, mul(a, x)));
        return x;
    }

  private:
    static unsigned __int128 mulhi(unsigned __int128 a, unsigned __int128 b) {
        // 128x128 -> high 128 of the 256-bit product (schoolbook on 64-bit halves)
        uint64_t a0 = static_cast<uint64_t>(a), a1 = static_cast<uint64_t>(a >> 64);
        uint64_t b0 = static_cast<uint64_t>(b), b1 = static_cast<uint64_t>(b >> 64);
        unsigned __int128 ll = static_cast<unsigned __int128>(a0) * b0;
        unsigned __int128 lh = static_cast<unsigned __int128>(a0) * b1;
        unsigned __int128 hl = static_cast<unsigned __int128>(a1) * b0;
        unsigned __int128 hh = static_cast<unsigned __int128>(a1) * b1;
        unsigned __int128 mid = lh + (ll >> 64);
        unsigned __int128 carry = mid < lh ? (static_cast<unsigned __int128>(1) << 64) : 0;
        mid += hl;
        if (mid < hl) carry += static_cast<unsigned __int128>(1) << 64;
        return hh + (mid >> 64) + carry;
    }
    uint64_t inv_mod_p(uint64_t a) const {
        // Fermat; p is prime
        uint64_t r = 1, b = a, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    }

    uint64_t p_ = 2;
    unsigned m_ = 1;
    uint64_t q_ = 2;
    bool pow2_ = true;
    bool small_ = true;
    uint64_t mask_ = 1;
    unsigned __int128 rcp_ = 0;
    uint64_t rcp64_ = 0;
    std::vector<uint64_t> ppow_;
};

} // namespace dmod

#endif

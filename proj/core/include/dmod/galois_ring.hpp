#ifndef DMOD_GALOIS_RING_HPP
#define DMOD_GALOIS_RING_HPP

#include <memory>
#include <vector>

#include "dmod/residues.hpp"
#include "dmod/util.hpp"

namespace dmod {

class GaloisRing;
using RingPtr = std::shared_ptr<const GaloisRing>;

// Element of GR(p^m, n) in the power basis of the canonical generator.
// Coordinates are canonical representatives in [0, p^m).
struct GRElem {
    const GaloisRing* R = nullptr;
    std::vector<uint64_t> c;

    bool is_zero() const {
        for (uint64_t v : c)
            if (v) return false;
        return true;
    }
};

// The ring W_m(F_{p^n}) realized as GR(p^m, n) = (Z/p^m)[x]/(f), where f is
// the canonical modulus: the lexicographically least monic irreducible
// polynomial of degree n over F_p (coefficients compared from the constant
// term up), lifted coefficient-by-coefficient to Z/p^m. Instances are
// immutable and shared through get(); all element operations are pure.
class GaloisRing {
  public:
    // Registry access; contexts are cached per (p, m, n).
    static RingPtr get(uint64_t p, unsigned m, unsigned n);

    uint64_t p() const { return zr_.p(); }
    unsigned m() const { return zr_.m(); }
    unsigned n() const { return n_; }
    uint64_t q() const { return zr_.q(); }
    const Zpm& zr() const { return zr_; }
    // n+1 coefficients, constant term first, leading coefficient 1
    const std::vector<uint64_t>& modulus() const { return modulus_; }

    GRElem zero() const;
    GRElem one() const;
    GRElem from_int(uint64_t v) const;
    GRElem from_coords(std::vector<uint64_t> coords) const;
    GRElem generator() const;

    GRElem add(const GRElem& a, const GRElem& b) const;
    GRElem sub(const GRElem& a, const GRElem& b) const;
    GRElem neg(const GRElem& a) const;
    GRElem mul(const GRElem& a, const GRElem& b) const;
    GRElem mul_scalar(const GRElem& a, uint64_t s) const;
    GRElem pow(const GRElem& a, uint64_t e) const;
    // defined iff a is a unit (nonzero mod p)
    GRElem inv(const GRElem& a) const;
    bool is_unit(const GRElem& a) const;
    // min over coordinates of the p-adic valuation; val(0) = m
    unsigned val(const GRElem& a) const;

    GRElem frobenius(const GRElem& a) const;
    GRElem frobenius_inv(const GRElem& a) const;

    // coords of sigma(g)^t and sigma^{-1}(g)^t, t < n (used to linearize
    // semilinear systems over Z/p^m)
    const std::vector<uint64_t>& sigma_gen_pow(unsigned t) const { return sigma_pow_[t]; }
    const std::vector<uint64_t>& sigma_inv_gen_pow(unsigned t) const { return sigma_inv_pow_[t]; }

    ~GaloisRing() = default;
    GaloisRing(const GaloisRing&) = delete;
    GaloisRing& operator=(const GaloisRing&) = delete;

  private:
    GaloisRing(uint64_t p, unsigned m, unsigned n);

    std::vector<uint64_t> apply_matrix(const std::vector<std::vector<uint64_t>>& cols,
                                       const GRElem& a) const;

    Zpm zr_;
    unsigned n_;
    std::vector<uint64_t> modulus_;
    GRElem frobenius_image_; // sigma(g), the Hensel root of f congruent to g^p
    std::vector<std::vector<uint64_t>> sigma_pow_;     // column t: coords of sigma(g)^t
    std::vector<std::vector<uint64_t>> sigma_inv_pow_; // column t: coords of sigma^{-1}(g)^t
};

inline bool same_ring(const GRElem& a, const GRElem& b) { return a.R == b.R; }

inline GRElem operator+(const GRElem& a, const GRElem& b) { return a.R->add(a, b); }
inline GRElem operator-(const GRElem& a, const GRElem& b) { return a.R->sub(a, b); }
inline GRElem operator*(const GRElem& a, const GRElem& b) { return a.R->mul(a, b); }
inline GRElem operator-(const GRElem& a) { return a.R->neg(a); }
inline bool operator==(const GRElem& a, const GRElem& b) { return a.R == b.R && a.c == b.c; }
inline bool operator!=(const GRElem& a, const GRElem& b) { return !(a == b); }

GRElem frobenius(const GRElem& x);
GRElem frobenius_inv(const GRElem& x);
GRElem inv(const GRElem& x);
unsigned val(const GRElem& x);

// ring homomorphism onto GR(p^m', n), m' <= m
GRElem reduce_precision(const GRElem& x, unsigned m2);
// y in GR(p^{m-k}, n) with p^k y = x; requires p^k | x and k < m
GRElem exact_div_p(const GRElem& x, unsigned k);

// Injective ring homomorphism GR(p^m, n) -> GR(p^m, N) for n | N. The image
// of the generator is the Hensel lift of the lexicographically least root of
// the source modulus in the target residue field; cached per ring pair.
GRElem embed(const GRElem& x, const RingPtr& target);

// Canonical modulus for (p, n) over F_p (degree-n, monic, constant term
// first). Exposed for tests.
std::vector<uint64_t> canonical_modulus_mod_p(uint64_t p, unsigned n);

} // namespace dmod

#endif

#ifndef DMOD_EXPLOG_HPP
#define DMOD_EXPLOG_HPP

#include "dmod/dieudonne.hpp"
#include "dmod/gr_matrix.hpp"

namespace dmod {

// Nilpotency domain on which the truncated series converge.
//   S(s):    (X mod p)^s = 0, valid for p > 2 and 1 <= s <= (p-1)/2
//   OneT(t): X = p Y with (Y mod p)^t = 0, any p
struct SigmaDomain {
    enum class Kind { S, OneT };
    Kind kind = Kind::OneT;
    unsigned index = 1;

    static SigmaDomain S(unsigned s) { return {Kind::S, s}; }
    static SigmaDomain one_t(unsigned t) { return {Kind::OneT, t}; }
    std::string describe() const {
        return (kind == Kind::S ? "S(" : "OneT(") + std::to_string(index) + ")";
    }
};

// exact membership test; also validates the domain parameters against the
// ring of X (S needs p > 2 and s <= (p-1)/2)
bool sigma_member(const GRMatrix& X, const SigmaDomain& dom);

// number of series terms after which everything vanishes mod p^m:
// t*m for OneT(t), (m+1)(p-1) for S(s)
unsigned series_term_bound(const GRMatrix& X, const SigmaDomain& dom);

// I + sum_{v>=1} X^v / v!, exact at the precision of X; DomainError outside
// the domain. exp_sigma uses the derived term bound; the _truncated variant
// exposes the term count for bound tests.
GRMatrix exp_sigma(const GRMatrix& X, const SigmaDomain& dom);
GRMatrix exp_sigma_truncated(const GRMatrix& X, const SigmaDomain& dom, unsigned terms);

// sum_{v>=1} (-1)^{v-1} (Y - I)^v / v for Y = I + Z with Z in the domain
GRMatrix log_sigma(const GRMatrix& Y, const SigmaDomain& dom);
GRMatrix log_sigma_truncated(const GRMatrix& Y, const SigmaDomain& dom, unsigned terms);

// exp(g X g^{-1}) == g exp(X) g^{-1} and the log analogue, exactly
bool conjugation_equivariance_check(const GRMatrix& X, const GRMatrix& g,
                                    const SigmaDomain& dom);

// E must solve the level-m endomorphism equations and lie in the domain;
// returns whether exp_sigma(E) - I and log_sigma(I + E) solve them too
bool endo_preservation_check(const DieudonneModule& D, unsigned m, const GRMatrix& E,
                             const SigmaDomain& dom);

// the pair (A, B) reduced to level m and embedded into GR(p^m, N)
std::pair<GRMatrix, GRMatrix> level_matrices(const DieudonneModule& D, unsigned m, unsigned N);

// whether E commutes with both structure maps at level m
bool commutes_with_module(const GRMatrix& E, const GRMatrix& Am, const GRMatrix& Bm);

} // namespace dmod

#endif

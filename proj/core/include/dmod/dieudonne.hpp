#ifndef DMOD_DIEUDONNE_HPP
#define DMOD_DIEUDONNE_HPP

#include <optional>

#include "dmod/gr_matrix.hpp"
#include "dmod/util.hpp"

namespace dmod {

// Isoclinic summand: coprime (c, d) with multiplicity; slope d/(c+d).
struct SlopeSummand {
    unsigned c = 0, d = 0, mult = 1;
};

struct SlopeData {
    std::vector<SlopeSummand> summands;
    unsigned height() const;
    unsigned codim() const;
    unsigned dim() const;
    // slope multiset with multiplicities expanded, ascending
    std::vector<Rat> slopes() const;
    void validate() const; // r_s > 0, gcd(c_s, d_s) = 1
};

// (M, phi, theta) over W_{m_work}(F_{p^e}) given by the matrix pair (A, B):
// phi(x) = A sigma(x), theta(x) = B sigma^{-1}(x), with
// A sigma(B) = B sigma^{-1}(A) = p I at working precision.
struct DieudonneModule {
    uint64_t p = 2;
    unsigned e = 1;      // base residue degree
    unsigned r = 0;      // height
    unsigned c = 0;      // codimension = rank of (A mod p)
    unsigned d = 0;      // dimension
    unsigned m_work = 1; // working precision
    GRMatrix A, B;

    // byte-exact, order-fixed: p, e, r, m_work, coordinates of A row-major
    std::vector<uint8_t> canonical_bytes() const;
    uint64_t hash() const;
};

// checks the defining identities and the rank bookkeeping; throws
// NotDieudonneError with a description on violation
void verify_module(const DieudonneModule& D);

// Block-diagonal standard module for the given slope data, base degree 1.
// Each summand copy contributes the cyclic block A e_i = e_{i+1 mod r_s}
// for i <= c_s and A e_i = p e_{i+1 mod r_s} otherwise.
DieudonneModule from_slopes(uint64_t p, const SlopeData& data, unsigned m_work);

// B is derived as sigma^{-1}(p A^{-1}) from the canonical integer lift of A;
// rejects matrices where p A^{-1} is not integral.
DieudonneModule from_matrix(uint64_t p, unsigned e, const GRMatrix& A, unsigned m_work);

// (M, g phi, theta g^{-1}) for invertible g
DieudonneModule twist(const DieudonneModule& D, const GRMatrix& g);

DieudonneModule direct_sum(const DieudonneModule& D1, const DieudonneModule& D2);

// Cartier dual: (sigma(B)^T, sigma^{-1}(A)^T); swaps (c, d)
DieudonneModule dual(const DieudonneModule& D);

// r - dim(colspace(A mod p) + colspace(B mod p))
unsigned a_number(const DieudonneModule& D);

// Slopes of the p-adic Newton polygon of charpoly(A sigma(A) ... sigma^{e-1}(A)),
// divided by e; ascending with multiplicity. Requires m_work > e*d.
std::vector<Rat> newton_slopes(const DieudonneModule& D);

// c*d - (1/2) sum |c_s d_t - c_t d_s| over summand copies
long long s_height(const SlopeData& data, unsigned c, unsigned d);

// regroup a slope multiset into coprime summands with multiplicities
SlopeData slope_data_from_multiset(const std::vector<Rat>& slopes);

// ceil(cd / (c+d))
unsigned j_number(unsigned c, unsigned d);

// Two independently evaluated forms of the normalization criterion for g:
// integrality of g A sigma(g^{-1}) A^{-1}, and (g mod p) preserving the
// kernel of x -> (A mod p) sigma(x). They must agree; disagreement throws.
bool check_F1(const DieudonneModule& D, const GRMatrix& g);

} // namespace dmod

#endif

#ifndef DMOD_GR_MATRIX_HPP
#define DMOD_GR_MATRIX_HPP

#include "dmod/galois_ring.hpp"

namespace dmod {

// Dense square-or-rectangular matrix over a Galois ring. Sizes stay tiny
// (heights <= 8), so everything here is exact schoolbook arithmetic.
struct GRMatrix {
    RingPtr ring;
    unsigned rows = 0, cols = 0;
    std::vector<GRElem> a; // row-major

    GRMatrix() = default;
    GRMatrix(RingPtr R, unsigned r, unsigned c)
        : ring(std::move(R)), rows(r), cols(c), a(size_t(r) * c, ring->zero()) {}

    GRElem& at(unsigned i, unsigned j) { return a[size_t(i) * cols + j]; }
    const GRElem& at(unsigned i, unsigned j) const { return a[size_t(i) * cols + j]; }

    static GRMatrix identity(RingPtr R, unsigned n);
    static GRMatrix zero(RingPtr R, unsigned r, unsigned c);

    bool is_zero() const;
    bool operator==(const GRMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

GRMatrix operator+(const GRMatrix& x, const GRMatrix& y);
GRMatrix operator-(const GRMatrix& x, const GRMatrix& y);
GRMatrix operator*(const GRMatrix& x, const GRMatrix& y);
GRMatrix scalar_mul(const GRElem& s, const GRMatrix& x);
GRMatrix transpose(const GRMatrix& x);
GRMatrix map_frobenius(const GRMatrix& x);
GRMatrix map_frobenius_inv(const GRMatrix& x);
GRMatrix map_reduce_precision(const GRMatrix& x, unsigned m2);
GRMatrix map_embed(const GRMatrix& x, const RingPtr& target);

GRElem det(const GRMatrix& x);
// adj(x) with adj(x) * x = det(x) * I
GRMatrix adjugate(const GRMatrix& x);
bool is_invertible(const GRMatrix& x);
// inverse over the ring; requires det to be a unit
GRMatrix inverse(const GRMatrix& x);

// coefficients of det(t*I - x): index k holds the coefficient of t^{r-k}
// (so [0] = 1); computed from sums of principal minors
std::vector<GRElem> char_poly(const GRMatrix& x);

// rank of a matrix over the residue field (entries reduced mod p)
unsigned rank_mod_p(const GRMatrix& x);
// basis of the right kernel of (x mod p) over the residue field, as columns
std::vector<std::vector<GRElem>> kernel_mod_p(const GRMatrix& x);

} // namespace dmod

#endif

#include "dmod/gr_matrix.hpp"

#include <map>

namespace dmod {

GRMatrix GRMatrix::identity(RingPtr R, unsigned n) {
    GRMatrix m(R, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = R->one();
    return m;
}

GRMatrix GRMatrix::zero(RingPtr R, unsigned r, unsigned c) { return GRMatrix(std::move(R), r, c); }

bool GRMatrix::is_zero() const {
    for (const auto& e : a)
        if (!e.is_zero()) return false;
    return true;
}

GRMatrix operator+(const GRMatrix& x, const GRMatrix& y) {
    GRMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
    return r;
}

GRMatrix operator-(const GRMatrix& x, const GRMatrix& y) {
    GRMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
    return r;
}

GRMatrix operator*(const GRMatrix& x, const GRMatrix& y) {
    GRMatrix r(x.ring, x.rows, y.cols);
    for (unsigned i = 0; i < x.rows; ++i)
        for (unsigned k = 0; k < x.cols; ++k) {
            const GRElem& v = x.at(i, k);
            if (v.is_zero()) continue;
            for (unsigned j = 0; j < y.cols; ++j)
                r.at(i, j) = r.at(i, j) + v * y.at(k, j);
        }
    return r;
}

GRMatrix scalar_mul(const GRElem& s, const GRMatrix& x) {
    GRMatrix r = x;
    for (auto& e : r.a) e = s * e;
    return r;
}

GRMatrix transpose(const GRMatrix& x) {
    GRMatrix r(x.ring, x.cols, x.rows);
    for (unsigned i = 0; i < x.rows; ++i)
        for (unsigned j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

GRMatrix map_frobenius(const GRMatrix& x) {
    GRMatrix r = x;
    for (auto& e : r.a) e = frobenius(e);
    return r;
}

GRMatrix map_frobenius_inv(const GRMatrix& x) {
    GRMatrix r = x;
    for (auto& e : r.a) e = frobenius_inv(e);
    return r;
}

GRMatrix map_reduce_precision(const GRMatrix& x, unsigned m2) {
    GRMatrix r(GaloisRing::get(x.ring->p(), m2, x.ring->n()), x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = reduce_precision(x.a[i], m2);
    return r;
}

GRMatrix map_embed(const GRMatrix& x, const RingPtr& target) {
    GRMatrix r(target, x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = embed(x.a[i], target);
    return r;
}

namespace {

// det of the submatrix with the given row set and column set (as bitmasks of
// equal popcount), by Laplace expansion with memoization
GRElem det_sub(const GRMatrix& x, unsigned rowmask, unsigned colmask,
               std::map<std::pair<unsigned, unsigned>, GRElem>& memo) {
    if (rowmask == 0) return x.ring->one();
    auto key = std::make_pair(rowmask, colmask);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int i = __builtin_ctz(rowmask); // expand along the first row in the set
    unsigned rrest = rowmask & (rowmask - 1);
    GRElem acc = x.ring->zero();
    int sign = 1;
    for (unsigned jm = colmask; jm; jm &= jm - 1) {
        int j = __builtin_ctz(jm);
        const GRElem& v = x.at(i, j);
        if (!v.is_zero()) {
            GRElem minor = det_sub(x, rrest, colmask & ~(1u << j), memo);
            GRElem term = v * minor;
            acc = sign > 0 ? acc + term : acc - term;
        }
        sign = -sign;
    }
    memo.emplace(key, acc);
    return acc;
}

} // namespace

GRElem det(const GRMatrix& x) {
    std::map<std::pair<unsigned, unsigned>, GRElem> memo;
    unsigned full = (x.rows >= 32) ? 0 : ((1u << x.rows) - 1);
    if (x.rows >= 32) throw CapacityError("determinant capped at 31x31");
    return det_sub(x, full, full, memo);
}

GRMatrix adjugate(const GRMatrix& x) {
    unsigned n = x.rows;
    GRMatrix r(x.ring, n, n);
    std::map<std::pair<unsigned, unsigned>, GRElem> memo;
    unsigned full = (1u << n) - 1;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            GRElem minor = det_sub(x, full & ~(1u << j), full & ~(1u << i), memo);
            r.at(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    return r;
}

bool is_invertible(const GRMatrix& x) { return x.ring->is_unit(det(x)); }

GRMatrix inverse(const GRMatrix& x) {
    GRElem d = det(x);
    if (!x.ring->is_unit(d)) throw NonUnitError("matrix determinant is not a unit");
    GRElem di = inv(d);
    GRMatrix r = adjugate(x);
    for (auto& e : r.a) e = di * e;
    return r;
}

std::vector<GRElem> char_poly(const GRMatrix& x) {
    unsigned n = x.rows;
    std::map<std::pair<unsigned, unsigned>, GRElem> memo;
    std::vector<GRElem> sums(n + 1, x.ring->zero()); // sums[k] = sum of k x k principal minors
    sums[0] = x.ring->one();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        unsigned k = __builtin_popcount(mask);
        sums[k] = sums[k] + det_sub(x, mask, mask, memo);
    }
    std::vector<GRElem> coeff(n + 1, x.ring->zero());
    for (unsigned k = 0; k <= n; ++k)
        coeff[k] = (k % 2 == 0) ? sums[k] : -sums[k];
    return coeff;
}

namespace {

// Gaussian elimination of (x mod p) over the residue field; returns the
// reduced row-echelon form together with pivot columns
struct Rref {
    GRMatrix mat;
    std::vector<unsigned> pivots;
};

Rref rref_mod_p(const GRMatrix& x) {
    RingPtr K = GaloisRing::get(x.ring->p(), 1, x.ring->n());
    GRMatrix w(K, x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) w.a[i] = reduce_precision(x.a[i], 1);
    std::vector<unsigned> pivots;
    unsigned r = 0;
    for (unsigned j = 0; j < w.cols && r < w.rows; ++j) {
        unsigned sel = w.rows;
        for (unsigned i = r; i < w.rows; ++i)
            if (!w.at(i, j).is_zero()) { sel = i; break; }
        if (sel == w.rows) continue;
        for (unsigned c = 0; c < w.cols; ++c) std::swap(w.at(r, c), w.at(sel, c));
        GRElem pi = inv(w.at(r, j));
        for (unsigned c = j; c < w.cols; ++c) w.at(r, c) = pi * w.at(r, c);
        for (unsigned i = 0; i < w.rows; ++i) {
            if (i == r || w.at(i, j).is_zero()) continue;
            GRElem f = w.at(i, j);
            for (unsigned c = j; c < w.cols; ++c) w.at(i, c) = w.at(i, c) - f * w.at(r, c);
        }
        pivots.push_back(j);
        ++r;
    }
    return {std::move(w), std::move(pivots)};
}

} // namespace

unsigned rank_mod_p(const GRMatrix& x) { return rref_mod_p(x).pivots.size(); }

std::vector<std::vector<GRElem>> kernel_mod_p(const GRMatrix& x) {
    Rref rr = rref_mod_p(x);
    RingPtr K = rr.mat.ring;
    std::vector<bool> is_pivot(x.cols, false);
    for (unsigned j : rr.pivots) is_pivot[j] = true;
    std::vector<std::vector<GRElem>> basis;
    for (unsigned j = 0; j < x.cols; ++j) {
        if (is_pivot[j]) continue;
        std::vector<GRElem> v(x.cols, K->zero());
        v[j] = K->one();
        for (unsigned r = 0; r < rr.pivots.size(); ++r)
            v[rr.pivots[r]] = -rr.mat.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace dmod

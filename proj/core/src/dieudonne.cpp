#include "dmod/dieudonne.hpp"

#include <algorithm>
#include <numeric>

namespace dmod {

unsigned SlopeData::height() const {
    unsigned r = 0;
    for (const auto& s : summands) r += (s.c + s.d) * s.mult;
    return r;
}

unsigned SlopeData::codim() const {
    unsigned c = 0;
    for (const auto& s : summands) c += s.c * s.mult;
    return c;
}

unsigned SlopeData::dim() const {
    unsigned d = 0;
    for (const auto& s : summands) d += s.d * s.mult;
    return d;
}

std::vector<Rat> SlopeData::slopes() const {
    std::vector<Rat> out;
    for (const auto& s : summands) {
        unsigned rs = s.c + s.d;
        for (unsigned k = 0; k < s.mult * rs; ++k) out.emplace_back(s.d, rs);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void SlopeData::validate() const {
    if (summands.empty()) throw Error("slope data must have at least one summand");
    for (const auto& s : summands) {
        if (s.c + s.d == 0) throw Error("summand with c = d = 0");
        if (s.mult == 0) throw Error("summand with multiplicity 0");
        if (std::gcd(s.c, s.d) != 1) throw Error("summand (c, d) must be coprime");
    }
}

std::vector<uint8_t> DieudonneModule::canonical_bytes() const {
    std::vector<uint8_t> out;
    auto put = [&out](uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    };
    put(p);
    put(e);
    put(r);
    put(m_work);
    for (const GRElem& x : A.a)
        for (uint64_t v : x.c) put(v);
    return out;
}

uint64_t DieudonneModule::hash() const {
    auto b = canonical_bytes();
    return fnv1a64(b.data(), b.size());
}

void verify_module(const DieudonneModule& D) {
    RingPtr R = D.A.ring;
    GRMatrix pI = scalar_mul(R->from_int(D.p), GRMatrix::identity(R, D.r));
    if (!(D.A * map_frobenius(D.B) == pI))
        throw NotDieudonneError("A sigma(B) != p I at working precision");
    if (!(D.B * map_frobenius_inv(D.A) == pI))
        throw NotDieudonneError("B sigma^{-1}(A) != p I at working precision");
    if (rank_mod_p(D.A) != D.c) throw NotDieudonneError("rank of A mod p != c");
    if (D.c + D.d != D.r) throw NotDieudonneError("c + d != r");
}

DieudonneModule from_slopes(uint64_t p, const SlopeData& data, unsigned m_work) {
    data.validate();
    unsigned r = data.height(), c = data.codim(), d = data.dim();
    if (m_work < d + 1) throw PrecisionError("m_work must be at least d + 1");
    RingPtr R = GaloisRing::get(p, m_work, 1);
    DieudonneModule D;
    D.p = p;
    D.e = 1;
    D.r = r;
    D.c = c;
    D.d = d;
    D.m_work = m_work;
    D.A = GRMatrix::zero(R, r, r);
    D.B = GRMatrix::zero(R, r, r);
    unsigned off = 0;
    for (const auto& s : data.summands) {
        unsigned rs = s.c + s.d;
        for (unsigned copy = 0; copy < s.mult; ++copy) {
            for (unsigned i = 1; i <= rs; ++i) {
                unsigned row = off + (i % rs), col = off + i - 1;
                bool scaled = i > s.c;
                D.A.at(row, col) = R->from_int(scaled ? p : 1);
                // B is the monomial p A^{-1}: B e_{i+1 mod rs} = (p/u_i) e_i
                D.B.at(col, row) = R->from_int(scaled ? 1 : p);
            }
            off += rs;
        }
    }
    verify_module(D);
    return D;
}

DieudonneModule from_matrix(uint64_t p, unsigned e, const GRMatrix& A, unsigned m_work) {
    if (A.rows != A.cols) throw Error("A must be square");
    if (A.ring->p() != p || A.ring->m() != m_work || A.ring->n() != e)
        throw Error("A is not over GR(p^m_work, e)");
    unsigned r = A.rows;
    unsigned c = rank_mod_p(A), d = r - c;
    // p A^{-1} = p adj(A) / det(A); the division costs 2*val(det) digits of
    // precision through this route, so work with the canonical lift of A at
    // an extended precision first
    unsigned ext = m_work + 2 * d + 1;
    RingPtr Rx = GaloisRing::get(p, ext, e);
    GRMatrix Ax(Rx, r, r);
    for (size_t i = 0; i < A.a.size(); ++i) Ax.a[i] = Rx->from_coords(A.a[i].c);
    GRElem dt = det(Ax);
    unsigned v = Rx->val(dt);
    if (v >= m_work) throw PrecisionError("det(A) valuation not below working precision");
    // with rank(A mod p) = c, integrality of p A^{-1} is equivalent to all
    // elementary divisors lying in {1, p}, i.e. val(det) = d
    if (v != d) throw NotDieudonneError("p A^{-1} is not integral (det valuation != d)");
    GRElem unit = v ? exact_div_p(dt, v) : dt; // at precision ext - v
    GRElem uinv = inv(unit);
    unsigned mid = ext - v;
    GRMatrix adjA = adjugate(Ax);
    RingPtr Rw = GaloisRing::get(p, m_work, e);
    DieudonneModule D;
    D.p = p;
    D.e = e;
    D.r = r;
    D.c = c;
    D.d = d;
    D.m_work = m_work;
    D.A = GRMatrix(Rw, r, r);
    D.B = GRMatrix(Rw, r, r);
    for (size_t i = 0; i < A.a.size(); ++i) D.A.a[i] = reduce_precision(Ax.a[i], m_work);
    RingPtr Rm = GaloisRing::get(p, mid, e);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) {
            GRElem t = reduce_precision(Rx->mul_scalar(adjA.at(i, j), p), mid);
            t = Rm->mul(t, uinv); // p adj / unit at precision mid
            if (Rm->val(t) < v)
                throw NotDieudonneError("p A^{-1} is not integral");
            GRElem b = v ? exact_div_p(t, v) : t; // precision mid - v >= m_work + 1
            D.B.at(i, j) = frobenius_inv(reduce_precision(b, m_work));
        }
    verify_module(D);
    return D;
}

DieudonneModule twist(const DieudonneModule& D, const GRMatrix& g) {
    if (!is_invertible(g)) throw NonUnitError("twist requires invertible g");
    DieudonneModule T = D;
    T.A = g * D.A;
    T.B = D.B * map_frobenius_inv(inverse(g));
    verify_module(T);
    return T;
}

DieudonneModule direct_sum(const DieudonneModule& D1, const DieudonneModule& D2) {
    if (D1.p != D2.p) throw Error("direct sum requires equal p");
    if (D1.m_work != D2.m_work) throw Error("direct sum requires equal working precision");
    unsigned e = std::lcm(D1.e, D2.e);
    RingPtr R = GaloisRing::get(D1.p, D1.m_work, e);
    GRMatrix A1 = map_embed(D1.A, R), A2 = map_embed(D2.A, R);
    GRMatrix B1 = map_embed(D1.B, R), B2 = map_embed(D2.B, R);
    DieudonneModule D;
    D.p = D1.p;
    D.e = e;
    D.r = D1.r + D2.r;
    D.c = D1.c + D2.c;
    D.d = D1.d + D2.d;
    D.m_work = D1.m_work;
    D.A = GRMatrix::zero(R, D.r, D.r);
    D.B = GRMatrix::zero(R, D.r, D.r);
    for (unsigned i = 0; i < D1.r; ++i)
        for (unsigned j = 0; j < D1.r; ++j) {
            D.A.at(i, j) = A1.at(i, j);
            D.B.at(i, j) = B1.at(i, j);
        }
    for (unsigned i = 0; i < D2.r; ++i)
        for (unsigned j = 0; j < D2.r; ++j) {
            D.A.at(D1.r + i, D1.r + j) = A2.at(i, j);
            D.B.at(D1.r + i, D1.r + j) = B2.at(i, j);
        }
    verify_module(D);
    return D;
}

DieudonneModule dual(const DieudonneModule& D) {
    DieudonneModule T = D;
    T.c = D.d;
    T.d = D.c;
    T.A = transpose(map_frobenius(D.B));
    T.B = transpose(map_frobenius_inv(D.A));
    verify_module(T);
    return T;
}

unsigned a_number(const DieudonneModule& D) {
    GRMatrix joint(D.A.ring, D.r, 2 * D.r);
    for (unsigned i = 0; i < D.r; ++i)
        for (unsigned j = 0; j < D.r; ++j) {
            joint.at(i, j) = D.A.at(i, j);
            joint.at(i, D.r + j) = D.B.at(i, j);
        }
    return D.r - rank_mod_p(joint);
}

std::vector<Rat> newton_slopes(const DieudonneModule& D) {
    if (D.m_work <= D.e * D.d)
        throw PrecisionError("newton slopes need m_work > e*d; raise m_work");
    GRMatrix prod = D.A;
    GRMatrix tw = D.A;
    for (unsigned k = 1; k < D.e; ++k) {
        tw = map_frobenius(tw);
        prod = prod * tw;
    }
    std::vector<GRElem> chi = char_poly(prod);
    const unsigned m = D.m_work;
    // lower convex hull of (k, val chi_k); zero coefficients have valuation
    // >= m_work > e*d and always lie above the hull, so they are skipped
    std::vector<std::pair<long long, long long>> pts;
    for (unsigned k = 0; k <= D.r; ++k) {
        unsigned v = D.A.ring->val(chi[k]);
        if (v >= m && k == D.r)
            throw PrecisionError("charpoly constant term vanished at working precision");
        if (v < m) pts.emplace_back(k, v);
    }
    std::vector<std::pair<long long, long long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it is strictly below segment a-pt
            if ((b.second - a.second) * (pt.first - a.first) <=
                (pt.second - a.second) * (b.first - a.first))
                break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    std::vector<Rat> slopes;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long long dx = hull[i + 1].first - hull[i].first;
        long long dy = hull[i + 1].second - hull[i].second;
        for (long long k = 0; k < dx; ++k) slopes.emplace_back(dy, dx * D.e);
    }
    long long num = 0, den = 1;
    for (const Rat& s : slopes) {
        if (s.num < 0 || s.num > s.den)
            throw NotDieudonneError("newton slope outside [0, 1]");
        num = num * s.den + s.num * den;
        den *= s.den;
        long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    if (den != 1 || num != static_cast<long long>(D.d))
        throw NotDieudonneError("newton slopes do not sum to d");
    std::sort(slopes.begin(), slopes.end());
    return slopes;
}

long long s_height(const SlopeData& data, unsigned c, unsigned d) {
    data.validate();
    if (data.codim() != c || data.dim() != d)
        throw Error("slope data inconsistent with (c, d)");
    std::vector<std::pair<long long, long long>> copies; // (c_s, d_s) per copy
    for (const auto& s : data.summands)
        for (unsigned k = 0; k < s.mult; ++k) copies.emplace_back(s.c, s.d);
    long long acc = 0;
    for (const auto& s : copies)
        for (const auto& t : copies) acc += std::llabs(s.first * t.second - t.first * s.second);
    return static_cast<long long>(c) * d - acc / 2;
}

SlopeData slope_data_from_multiset(const std::vector<Rat>& slopes) {
    std::vector<Rat> s = slopes;
    std::sort(s.begin(), s.end());
    SlopeData out;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        size_t count = j - i;
        unsigned rs = static_cast<unsigned>(s[i].den);
        if (count % rs) throw Error("slope multiplicity not divisible by denominator");
        SlopeSummand sm;
        sm.d = static_cast<unsigned>(s[i].num);
        sm.c = rs - sm.d;
        sm.mult = static_cast<unsigned>(count / rs);
        out.summands.push_back(sm);
        i = j;
    }
    out.validate();
    return out;
}

unsigned j_number(unsigned c, unsigned d) {
    unsigned r = c + d;
    if (r == 0) throw Error("height must be positive");
    return (c * d + r - 1) / r;
}

bool check_F1(const DieudonneModule& D, const GRMatrix& g) {
    if (!is_invertible(g)) throw NonUnitError("check_F1 requires invertible g");
    RingPtr R = D.A.ring;
    // criterion 1: g A sigma(g^{-1}) A^{-1} integral, tested as
    // val(g A sigma(g^{-1}) adj(A)) >= val(det A) entrywise
    GRMatrix X = g * D.A * map_frobenius(inverse(g)) * adjugate(D.A);
    unsigned v = R->val(det(D.A));
    bool crit1 = true;
    for (const GRElem& x : X.a)
        if (R->val(x) < v) { crit1 = false; break; }
    // criterion 2: (g mod p) preserves ker(x -> (A mod p) sigma(x))
    auto lin_kernel = kernel_mod_p(D.A); // kernel of y -> (A mod p) y
    RingPtr K = GaloisRing::get(D.p, 1, D.e);
    unsigned dim = lin_kernel.size();
    GRMatrix basis(K, D.r, dim); // columns: sigma^{-1} of the linear kernel
    for (unsigned b = 0; b < dim; ++b)
        for (unsigned i = 0; i < D.r; ++i) basis.at(i, b) = frobenius_inv(lin_kernel[b][i]);
    GRMatrix gbar = map_reduce_precision(g, 1);
    GRMatrix images = gbar * basis;
    GRMatrix aug(K, D.r, 2 * dim);
    for (unsigned i = 0; i < D.r; ++i)
        for (unsigned b = 0; b < dim; ++b) {
            aug.at(i, b) = basis.at(i, b);
            aug.at(i, dim + b) = images.at(i, b);
        }
    bool crit2 = rank_mod_p(aug) == rank_mod_p(basis);
    if (crit1 != crit2)
        throw Error("normalization criteria disagree (integrality vs kernel stability)");
    return crit1;
}

} // namespace dmod

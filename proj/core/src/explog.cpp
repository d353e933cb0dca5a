#include "dmod/explog.hpp"

namespace dmod {

namespace {

bool nilpotent_mod_p(const GRMatrix& X, unsigned index) {
    GRMatrix Y = map_reduce_precision(X, 1);
    GRMatrix P = GRMatrix::identity(Y.ring, Y.rows);
    for (unsigned k = 0; k < index; ++k) P = P * Y;
    return P.is_zero();
}

void validate_domain(const GRMatrix& X, const SigmaDomain& dom) {
    if (dom.index < 1) throw DomainError("domain index must be positive");
    if (dom.kind == SigmaDomain::Kind::S) {
        uint64_t p = X.ring->p();
        if (p <= 2) throw DomainError("S(s) domains need p > 2");
        if (2 * dom.index > p - 1) throw DomainError("S(s) needs s <= (p-1)/2");
    }
}

GRMatrix lift_canonical(const GRMatrix& X, const RingPtr& R) {
    GRMatrix Y(R, X.rows, X.cols);
    for (size_t i = 0; i < X.a.size(); ++i) Y.a[i] = R->from_coords(X.a[i].c);
    return Y;
}

unsigned val_of_factorial(uint64_t v, uint64_t p) {
    unsigned w = 0;
    for (uint64_t q = p; q <= v; q *= p) w += static_cast<unsigned>(v / q);
    return w;
}

enum class Series { Exp, Log };

GRMatrix truncated_series(const GRMatrix& X, const SigmaDomain& dom, unsigned terms,
                          Series kind) {
    validate_domain(X, dom);
    if (!sigma_member(X, dom))
        throw DomainError("matrix outside " + dom.describe() + " domain");
    const uint64_t p = X.ring->p();
    const unsigned m = X.ring->m();
    unsigned headroom = kind == Series::Exp ? val_of_factorial(terms, p) : 0;
    if (kind == Series::Log)
        for (uint64_t q = p; q <= terms; q *= p) ++headroom;
    RingPtr Rh = GaloisRing::get(p, m + headroom, X.ring->n());
    RingPtr Rm = GaloisRing::get(p, m, X.ring->n());
    GRMatrix Xh = lift_canonical(X, Rh);
    GRMatrix power = GRMatrix::identity(Rh, X.rows);
    GRMatrix acc = GRMatrix::zero(Rm, X.rows, X.cols);
    uint64_t denom_unit = 1;   // unit part of v! (Exp) or of v (Log)
    unsigned denom_val = 0;    // p-valuation of the same
    const Zpm& zh = Rh->zr();
    for (unsigned v = 1; v <= terms; ++v) {
        power = power * Xh;
        uint64_t vv = v;
        unsigned a = 0;
        while (vv % p == 0) { vv /= p; ++a; }
        if (kind == Series::Exp) {
            denom_val += a;
            denom_unit = zh.mul(denom_unit, vv % zh.q());
        } else {
            denom_val = a;
            denom_unit = vv % zh.q();
        }
        uint64_t uinv = zh.inv(denom_unit);
        GRMatrix term(Rm, X.rows, X.cols);
        for (size_t i = 0; i < power.a.size(); ++i) {
            GRElem t = Rh->mul_scalar(power.a[i], uinv);
            if (denom_val) t = exact_div_p(t, denom_val);
            term.a[i] = reduce_precision(t, m);
        }
        bool negative = kind == Series::Log && v % 2 == 0;
        acc = negative ? acc - term : acc + term;
    }
    return acc;
}

} // namespace

bool sigma_member(const GRMatrix& X, const SigmaDomain& dom) {
    validate_domain(X, dom);
    if (dom.kind == SigmaDomain::Kind::S) return nilpotent_mod_p(X, dom.index);
    // OneT(t): X = p Y with (Y mod p)^t = 0
    for (const GRElem& x : X.a)
        if (val(x) < 1) return false;
    if (X.ring->m() == 1) return true; // p Y vanishes at level 1
    GRMatrix Y(GaloisRing::get(X.ring->p(), X.ring->m() - 1, X.ring->n()), X.rows, X.cols);
    for (size_t i = 0; i < X.a.size(); ++i) Y.a[i] = exact_div_p(X.a[i], 1);
    return nilpotent_mod_p(Y, dom.index);
}

unsigned series_term_bound(const GRMatrix& X, const SigmaDomain& dom) {
    unsigned m = X.ring->m();
    if (dom.kind == SigmaDomain::Kind::OneT) return dom.index * m;
    return (m + 1) * static_cast<unsigned>(X.ring->p() - 1);
}

GRMatrix exp_sigma_truncated(const GRMatrix& X, const SigmaDomain& dom, unsigned terms) {
    GRMatrix e1 = truncated_series(X, dom, terms, Series::Exp);
    return GRMatrix::identity(e1.ring, e1.rows) + e1;
}

GRMatrix exp_sigma(const GRMatrix& X, const SigmaDomain& dom) {
    GRMatrix Y = exp_sigma_truncated(X, dom, series_term_bound(X, dom));
    GRMatrix Z = Y - GRMatrix::identity(Y.ring, Y.rows);
    if (!sigma_member(Z, dom)) throw Error("exp left the domain");
    return Y;
}

GRMatrix log_sigma_truncated(const GRMatrix& Y, const SigmaDomain& dom, unsigned terms) {
    GRMatrix Z = Y - GRMatrix::identity(Y.ring, Y.rows);
    return truncated_series(Z, dom, terms, Series::Log);
}

GRMatrix log_sigma(const GRMatrix& Y, const SigmaDomain& dom) {
    GRMatrix Z = Y - GRMatrix::identity(Y.ring, Y.rows);
    GRMatrix L = log_sigma_truncated(Y, dom, series_term_bound(Z, dom));
    if (!sigma_member(L, dom)) throw Error("log left the domain");
    return L;
}

bool conjugation_equivariance_check(const GRMatrix& X, const GRMatrix& g,
                                    const SigmaDomain& dom) {
    GRMatrix gi = inverse(g);
    GRMatrix conj = g * X * gi;
    GRMatrix lhs_exp = exp_sigma(conj, dom);
    GRMatrix rhs_exp = g * exp_sigma(X, dom) * gi;
    if (!(lhs_exp == rhs_exp)) return false;
    GRMatrix I = GRMatrix::identity(X.ring, X.rows);
    GRMatrix lhs_log = log_sigma(I + conj, dom);
    GRMatrix rhs_log = g * log_sigma(I + X, dom) * gi;
    return lhs_log == rhs_log;
}

std::pair<GRMatrix, GRMatrix> level_matrices(const DieudonneModule& D, unsigned m, unsigned N) {
    if (m > D.m_work) throw PrecisionError("level exceeds working precision");
    RingPtr RN = GaloisRing::get(D.p, m, N);
    return {map_embed(map_reduce_precision(D.A, m), RN),
            map_embed(map_reduce_precision(D.B, m), RN)};
}

bool commutes_with_module(const GRMatrix& E, const GRMatrix& Am, const GRMatrix& Bm) {
    if (!(E * Am == Am * map_frobenius(E))) return false;
    return E * Bm == Bm * map_frobenius_inv(E);
}

bool endo_preservation_check(const DieudonneModule& D, unsigned m, const GRMatrix& E,
                             const SigmaDomain& dom) {
    auto [Am, Bm] = level_matrices(D, m, E.ring->n());
    if (!commutes_with_module(E, Am, Bm))
        throw Error("E is not an endomorphism solution at this level");
    GRMatrix I = GRMatrix::identity(E.ring, E.rows);
    GRMatrix from_exp = exp_sigma(E, dom) - I;
    GRMatrix from_log = log_sigma(I + E, dom);
    return commutes_with_module(from_exp, Am, Bm) && commutes_with_module(from_log, Am, Bm);
}

} // namespace dmod

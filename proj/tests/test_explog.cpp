#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmod/centralizer.hpp"
#include "dmod/explog.hpp"

using namespace dmod;

namespace {

// random matrix in OneT(t): p * g N g^{-1} with N banded so that N^t = 0
GRMatrix random_one_t(const RingPtr& R, unsigned r, unsigned t, Rng& rng) {
    unsigned band = (r + t - 1) / t; // nonzero only at column - row >= band
    GRMatrix N(R, r, r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = i + band; j < r; ++j) N.at(i, j) = R->from_int(rng.below(R->q()));
    GRMatrix g(R, r, r);
    do {
        for (auto& x : g.a) x = R->from_int(rng.below(R->q()));
    } while (!is_invertible(g));
    GRMatrix conj = g * N * inverse(g);
    return scalar_mul(R->from_int(R->p()), conj);
}

// random matrix in S(s): conjugated banded nilpotent plus p * arbitrary
GRMatrix random_s(const RingPtr& R, unsigned r, unsigned s, Rng& rng) {
    unsigned band = (r + s - 1) / s;
    GRMatrix N(R, r, r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = i + band; j < r; ++j) N.at(i, j) = R->from_int(rng.below(R->q()));
    GRMatrix g(R, r, r);
    do {
        for (auto& x : g.a) x = R->from_int(rng.below(R->q()));
    } while (!is_invertible(g));
    GRMatrix X = g * N * inverse(g);
    for (auto& x : X.a) {
        GRElem extra = R->mul_scalar(R->from_int(rng.below(R->q())), R->p());
        x = x + extra;
    }
    return X;
}

GRMatrix random_invertible(const RingPtr& R, unsigned r, Rng& rng) {
    GRMatrix g(R, r, r);
    do {
        for (auto& x : g.a) x = R->from_int(rng.below(R->q()));
    } while (!is_invertible(g));
    return g;
}

} // namespace

TEST_CASE("membership in the nilpotency domains") {
    RingPtr R = GaloisRing::get(3, 2, 1);
    GRMatrix zero(R, 2, 2);
    CHECK(sigma_member(zero, SigmaDomain::one_t(1)));
    CHECK(sigma_member(zero, SigmaDomain::S(1)));
    // p * I is p * (non-nilpotent)
    GRMatrix pI = scalar_mul(R->from_int(3), GRMatrix::identity(R, 2));
    CHECK_FALSE(sigma_member(pI, SigmaDomain::one_t(1)));
    CHECK(sigma_member(pI, SigmaDomain::S(1))); // its mod-p reduction is 0
    // strictly upper triangular matrices are nilpotent of index r
    GRMatrix U(R, 2, 2);
    U.at(0, 1) = R->one();
    CHECK(sigma_member(U, SigmaDomain::S(1)) == false); // U mod p nonzero
    RingPtr R5 = GaloisRing::get(5, 2, 1);
    GRMatrix U5(R5, 2, 2);
    U5.at(0, 1) = R5->one();
    CHECK(sigma_member(U5, SigmaDomain::S(2)));
    // S domains need p > 2 and 2s <= p - 1
    CHECK_THROWS_AS(sigma_member(U, SigmaDomain::S(2)), DomainError); // p = 3, s = 2
    RingPtr R2 = GaloisRing::get(2, 2, 1);
    GRMatrix Z2(R2, 2, 2);
    CHECK_THROWS_AS(sigma_member(Z2, SigmaDomain::S(1)), DomainError);
}

TEST_CASE("the square-zero example") {
    RingPtr R = GaloisRing::get(3, 2, 1);
    GRMatrix X(R, 2, 2);
    X.at(0, 1) = R->from_int(3);
    // p E_12 = p * (matrix unit): the mod-p part of X/p is E_12, nilpotent
    // of index 2 but not 1
    CHECK(sigma_member(X, SigmaDomain::one_t(2)));
    CHECK_FALSE(sigma_member(X, SigmaDomain::one_t(1)));
    auto dom = SigmaDomain::one_t(2);
    GRMatrix I = GRMatrix::identity(R, 2);
    GRMatrix E = exp_sigma(X, dom);
    CHECK(E == I + X);
    CHECK(log_sigma(E, dom) == X);
    CHECK(exp_sigma(GRMatrix::zero(R, 2, 2), dom) == I);
}

TEST_CASE("wrong-domain calls are hard errors") {
    RingPtr R = GaloisRing::get(3, 2, 1);
    GRMatrix X = GRMatrix::identity(R, 2);
    CHECK_THROWS_AS(exp_sigma(X, SigmaDomain::one_t(1)), DomainError);
    CHECK_THROWS_AS(log_sigma(X + X, SigmaDomain::one_t(1)), DomainError);
}

TEST_CASE("roundtrips are exact on seeded samples") {
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        for (unsigned m : {1u, 2u, 3u, 4u}) {
            RingPtr R = GaloisRing::get(p, m, 1);
            GRMatrix I = GRMatrix::identity(R, 3);
            Rng rng(p * 100 + m);
            for (unsigned t : {1u, 2u, 3u}) {
                auto dom = SigmaDomain::one_t(t);
                for (int k = 0; k < 40; ++k) {
                    GRMatrix X = random_one_t(R, 3, t, rng);
                    REQUIRE(sigma_member(X, dom));
                    CHECK(log_sigma(exp_sigma(X, dom), dom) == X);
                    CHECK(exp_sigma(log_sigma(I + X, dom), dom) == I + X);
                }
            }
            if (p > 2) {
                unsigned smax = std::min<unsigned>(3, (p - 1) / 2);
                for (unsigned s = 1; s <= smax; ++s) {
                    auto dom = SigmaDomain::S(s);
                    for (int k = 0; k < 40; ++k) {
                        GRMatrix X = random_s(R, 3, s, rng);
                        REQUIRE(sigma_member(X, dom));
                        CHECK(log_sigma(exp_sigma(X, dom), dom) == X);
                        CHECK(exp_sigma(log_sigma(I + X, dom), dom) == I + X);
                    }
                }
            }
        }
    }
}

TEST_CASE("derived truncation bounds agree with longer series") {
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        RingPtr R = GaloisRing::get(p, 3, 1);
        Rng rng(p);
        auto dom = SigmaDomain::one_t(2);
        for (int k = 0; k < 20; ++k) {
            GRMatrix X = random_one_t(R, 3, 2, rng);
            unsigned bound = series_term_bound(X, dom);
            CHECK(exp_sigma(X, dom) == exp_sigma_truncated(X, dom, bound + 8));
            GRMatrix I = GRMatrix::identity(R, 3);
            CHECK(log_sigma(I + X, dom) == log_sigma_truncated(I + X, dom, bound + 8));
        }
        if (p > 2) {
            auto doms = SigmaDomain::S(1);
            for (int k = 0; k < 20; ++k) {
                GRMatrix X = random_s(R, 3, 1, rng);
                unsigned bound = series_term_bound(X, doms);
                CHECK(exp_sigma(X, doms) == exp_sigma_truncated(X, doms, bound + 8));
            }
        }
    }
}

TEST_CASE("exp and log commute with conjugation") {
    RingPtr R = GaloisRing::get(3, 2, 1);
    // permutation on the square-zero example
    GRMatrix X(R, 2, 2);
    X.at(0, 1) = R->from_int(3);
    GRMatrix P(R, 2, 2);
    P.at(0, 1) = R->one();
    P.at(1, 0) = R->one();
    CHECK(conjugation_equivariance_check(X, P, SigmaDomain::one_t(2)));
    CHECK(conjugation_equivariance_check(X, GRMatrix::identity(R, 2),
                                         SigmaDomain::one_t(2)));
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        RingPtr Rp = GaloisRing::get(p, 3, 1);
        Rng rng(p * 7);
        for (int k = 0; k < 35; ++k) {
            GRMatrix Y = random_one_t(Rp, 3, 2, rng);
            GRMatrix g = random_invertible(Rp, 3, rng);
            CHECK(conjugation_equivariance_check(Y, g, SigmaDomain::one_t(2)));
        }
    }
}

TEST_CASE("block upper triangular shape is preserved") {
    RingPtr R = GaloisRing::get(5, 3, 1);
    Rng rng(31);
    for (int k = 0; k < 25; ++k) {
        // X block upper triangular with square-zero diagonal blocks scaled by p
        GRMatrix X(R, 4, 4);
        for (unsigned i = 0; i < 2; ++i)
            for (unsigned j = 2; j < 4; ++j) X.at(i, j) = R->from_int(rng.below(R->q()));
        X = scalar_mul(R->from_int(5), X);
        auto dom = SigmaDomain::one_t(2);
        REQUIRE(sigma_member(X, dom));
        GRMatrix E = exp_sigma(X, dom);
        GRMatrix L = log_sigma(GRMatrix::identity(R, 4) + X, dom);
        for (unsigned i = 2; i < 4; ++i)
            for (unsigned j = 0; j < 2; ++j) {
                CHECK(E.at(i, j).is_zero());
                CHECK(L.at(i, j).is_zero());
            }
    }
}

TEST_CASE("series maps send endomorphism solutions to solutions") {
    PointCountCache cache;
    unsigned tested = 0;
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        DieudonneModule D = from_slopes(p, SlopeData{{{1, 1, 1}}}, 5);
        for (unsigned m : {2u, 3u}) {
            auto sols = sample_end_solutions(D, m, 2, LieConstraint::full(), 100, 7 * p + m);
            for (const auto& E : sols) {
                GRMatrix Ebar = map_reduce_precision(E, 1);
                GRMatrix sq = Ebar * Ebar;
                if (!sq.is_zero()) continue; // keep the nilpotent ones
                GRMatrix pE = scalar_mul(E.ring->from_int(p), E);
                CHECK(endo_preservation_check(D, m, pE, SigmaDomain::one_t(2)));
                ++tested;
            }
        }
    }
    CHECK(tested >= 50);
}

TEST_CASE("preservation check validates its precondition") {
    DieudonneModule D = from_slopes(3, SlopeData{{{1, 1, 1}}}, 5);
    RingPtr R = GaloisRing::get(3, 2, 1);
    GRMatrix junk(R, 2, 2);
    junk.at(0, 1) = R->from_int(3);
    junk.at(1, 0) = R->from_int(6);
    // junk is in the domain but does not commute with the module maps
    if (!commutes_with_module(junk, level_matrices(D, 2, 1).first,
                              level_matrices(D, 2, 1).second))
        CHECK_THROWS_AS(endo_preservation_check(D, 2, junk, SigmaDomain::one_t(2)), Error);
}

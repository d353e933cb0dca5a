#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "dmod/centralizer.hpp"
#include "dmod/explog.hpp"

using namespace dmod;

namespace {

DieudonneModule ss(uint64_t p, unsigned m_work = 5) {
    return from_slopes(p, SlopeData{{{1, 1, 1}}}, m_work);
}

DieudonneModule ordinary(uint64_t p, unsigned m_work = 5) {
    return from_slopes(p, SlopeData{{{1, 0, 1}, {0, 1, 1}}}, m_work);
}

// Exhaustive oracle: enumerate every r x r matrix over GR(p^m, N) and count
// the solutions of both commutation equations. Only viable for tiny sizes.
unsigned long long brute_end_count(const DieudonneModule& D, unsigned m, unsigned N) {
    auto [Am, Bm] = level_matrices(D, m, N);
    RingPtr R = Am.ring;
    unsigned cells = D.r * D.r * N;
    uint64_t q = R->zr().q();
    std::vector<uint64_t> digits(cells, 0);
    unsigned long long count = 0;
    for (;;) {
        GRMatrix E(R, D.r, D.r);
        unsigned idx = 0;
        for (unsigned i = 0; i < D.r; ++i)
            for (unsigned j = 0; j < D.r; ++j) {
                std::vector<uint64_t> c(N);
                for (unsigned t = 0; t < N; ++t) c[t] = digits[idx++];
                E.at(i, j) = R->from_coords(std::move(c));
            }
        count += commutes_with_module(E, Am, Bm);
        unsigned k = 0;
        while (k < cells && digits[k] == q - 1) digits[k++] = 0;
        if (k == cells) break;
        ++digits[k];
    }
    return count;
}

} // namespace

TEST_CASE("level-1 point counts over F_4 match exhaustive enumeration") {
    // supersingular: 16 of the 256 matrices commute
    DieudonneModule D = ss(2);
    CHECK(brute_end_count(D, 1, 2) == 16);
    CHECK(end_log_size(D, 1, 2, LieConstraint::full()) == 4);
    // ordinary: diagonal pairs over the prime field
    DieudonneModule O = ordinary(2);
    CHECK(brute_end_count(O, 1, 2) == 4);
    CHECK(end_log_size(O, 1, 2, LieConstraint::full()) == 2);
    CHECK(end_log_size(O, 1, 6, LieConstraint::full()) == 2);
}

TEST_CASE("level-2 counts over Z/4 match exhaustive enumeration") {
    DieudonneModule D = ss(2);
    unsigned lg = end_log_size(D, 2, 1, LieConstraint::full());
    CHECK(brute_end_count(D, 2, 1) == (1ull << lg));
}

TEST_CASE("an empty hom block constrains everything away") {
    DieudonneModule D = ss(2);
    CHECK(end_log_size(D, 2, 2, LieConstraint::hom_block(2, 0)) == 0);
}

TEST_CASE("constraining never increases the count") {
    DieudonneModule D1 = ss(2);
    DieudonneModule D = direct_sum(D1, dual(D1));
    unsigned full = end_log_size(D, 1, 2, LieConstraint::full());
    unsigned hom = end_log_size(D, 1, 2, LieConstraint::hom_block(2, 2));
    RingPtr R = D.A.ring;
    GRMatrix J = GRMatrix::zero(R, 4, 4);
    for (unsigned i = 0; i < 2; ++i) {
        J.at(i, 2 + i) = R->one();
        J.at(2 + i, i) = -R->one();
    }
    unsigned pol = end_log_size(D, 1, 2, LieConstraint::pairing(J, true));
    CHECK(hom <= full);
    CHECK(pol <= full);
}

TEST_CASE("sampled solutions solve the equations") {
    for (uint64_t p : {2ull, 3ull}) {
        DieudonneModule D = from_slopes(p, SlopeData{{{2, 1, 1}}}, 4);
        auto sols = sample_end_solutions(D, 2, 2, LieConstraint::full(), 10, 99);
        auto [Am, Bm] = level_matrices(D, 2, 2);
        for (const auto& E : sols) CHECK(commutes_with_module(E, Am, Bm));
    }
}

TEST_CASE("gamma values for the height-2 modules") {
    PointCountCache cache;
    DieudonneModule D = ss(2);
    CHECK(gamma(D, 1, LieConstraint::full(), {}, &cache) == 1);
    CHECK(gamma(D, 2, LieConstraint::full(), {}, &cache) == 1);
    CHECK(gamma(D, 0, LieConstraint::full(), {}, &cache) == 0);
    DieudonneModule O = ordinary(2);
    for (unsigned m = 1; m <= 3; ++m)
        CHECK(gamma(O, m, LieConstraint::full(), {}, &cache) == 0);
}

TEST_CASE("centralizing sequences and the plateau rule") {
    PointCountCache cache;
    CentralizingSequence s = gamma_sequence(ss(2), 3, LieConstraint::full(), {}, &cache);
    CHECK(s.g == std::vector<int>{0, 1, 1, 1});
    CHECK(i_number(s, 1, 1) == 1);

    CentralizingSequence o = gamma_sequence(ordinary(2), 3, LieConstraint::full(), {}, &cache);
    CHECK(o.g == std::vector<int>{0, 0, 0, 0});
    CHECK(i_number(o, 1, 1) == 1);

    // height-1 etale: no constraint from cd
    CentralizingSequence e =
        gamma_sequence(from_slopes(2, SlopeData{{{1, 0, 1}}}, 4), 2, LieConstraint::full(), {},
                       &cache);
    CHECK(i_number(e, 1, 0) == 0);

    CentralizingSequence stuck;
    stuck.g = {0, 1, 2, 3};
    CHECK_THROWS_AS(i_number(stuck, 1, 3), InconclusiveError);
}

TEST_CASE("the split minimal height-6 module has plateau value 6") {
    PointCountCache cache;
    DieudonneModule D = from_slopes(2, SlopeData{{{2, 1, 1}, {1, 2, 1}}}, 4);
    ExtractionConfig cfg;
    cfg.n_cap = 24;
    CHECK(gamma(D, 1, LieConstraint::full(), cfg, &cache) == 6);
    CHECK(s_height(SlopeData{{{2, 1, 1}, {1, 2, 1}}}, 3, 3) == 6);
}

TEST_CASE("restriction images reduce to count differences") {
    PointCountCache cache;
    DieudonneModule D = ss(2);
    unsigned f2 = end_log_size(D, 2, 4, LieConstraint::full(), &cache);
    unsigned f1 = end_log_size(D, 1, 4, LieConstraint::full(), &cache);
    CHECK(restriction_image_log_size(D, 2, 1, 4, LieConstraint::full(), &cache) == f2 - f1);
    CHECK(restriction_image_growth(D, 2, 1, LieConstraint::full(), {}, &cache) == 0);
    DieudonneModule O = ordinary(2);
    CHECK(restriction_image_growth(O, 3, 1, LieConstraint::full(), {}, &cache) == 0);
    CHECK_THROWS_AS(restriction_image_log_size(D, 1, 1, 2, LieConstraint::full(), &cache),
                    Error);
}

TEST_CASE("relative sequences for the three contexts") {
    PointCountCache cache;
    DieudonneModule D1 = ss(2);
    DieudonneModule H = direct_sum(D1, D1);
    CentralizingSequence hs = relative_suite(H, LieConstraint::hom_block(2, 2), 3, {}, &cache);
    CHECK(hs.g[1] >= 1);
    CHECK(hs.g == std::vector<int>{0, 1, 1, 1});

    DieudonneModule EM = direct_sum(from_slopes(2, SlopeData{{{1, 0, 1}}}, 5),
                                    from_slopes(2, SlopeData{{{0, 1, 1}}}, 5));
    CentralizingSequence zs = relative_suite(EM, LieConstraint::hom_block(1, 1), 3, {}, &cache);
    CHECK(zs.all_zero());

    DieudonneModule P = direct_sum(ordinary(2), ss(2));
    CentralizingSequence ps = relative_suite(P, LieConstraint::parabolic({2}), 3, {}, &cache);
    for (unsigned i = 1; i <= 3; ++i) CHECK(ps.g[i] >= ps.g[i - 1]);

    DieudonneModule B3 = ss(3);
    DieudonneModule Q = direct_sum(B3, dual(B3));
    RingPtr R = Q.A.ring;
    GRMatrix J = GRMatrix::zero(R, 4, 4);
    for (unsigned i = 0; i < 2; ++i) {
        J.at(i, 2 + i) = R->one();
        J.at(2 + i, i) = -R->one();
    }
    CentralizingSequence qs = relative_suite(Q, LieConstraint::pairing(J, true), 3, {}, &cache);
    CHECK(qs.n.has_value()); // p = 3: plateau rule applies
    for (unsigned i = 1; i <= 3; ++i) CHECK(qs.g[i] >= qs.g[i - 1]);

    CHECK_THROWS_AS(relative_suite(H, LieConstraint::full(), 2, {}, &cache), Error);
}

TEST_CASE("the pairing plateau rule is withheld at p = 2") {
    PointCountCache cache;
    DieudonneModule B = ss(2);
    DieudonneModule Q = direct_sum(B, dual(B));
    RingPtr R = Q.A.ring;
    GRMatrix J = GRMatrix::zero(R, 4, 4);
    for (unsigned i = 0; i < 2; ++i) {
        J.at(i, 2 + i) = R->one();
        J.at(2 + i, i) = -R->one();
    }
    LieConstraint cst = LieConstraint::pairing(J, true);
    CHECK_FALSE(cst.plateau_rule_applies(2));
    CentralizingSequence qs = relative_suite(Q, cst, 3, {}, &cache);
    CHECK_FALSE(qs.n.has_value());
}

TEST_CASE("pairing gram matrices are validated against the module") {
    DieudonneModule B = ss(3);
    DieudonneModule Q = direct_sum(B, dual(B));
    RingPtr R = Q.A.ring;
    GRMatrix bad = GRMatrix::identity(R, 4);
    CHECK_THROWS_AS(validate_constraint(LieConstraint::pairing(bad, true), Q), Error);
}

TEST_CASE("extraction failure is loud and carries evidence") {
    unsigned calls = 0;
    auto weird = [&calls](unsigned N) {
        ++calls;
        return N * N; // no window of equal increments anywhere
    };
    ExtractionConfig cfg;
    cfg.n_cap = 30;
    CHECK_THROWS_AS(extract_growth(weird, 1, cfg, nullptr), ExtractionError);
    CHECK(calls > 0);
}

TEST_CASE("point count cache reuses records byte-identically") {
    std::string path = "/tmp/dmod_test_cache.txt";
    std::remove(path.c_str());
    {
        PointCountCache cache(path);
        DieudonneModule D = ss(2);
        unsigned a = end_log_size(D, 1, 2, LieConstraint::full(), &cache);
        unsigned b = end_log_size(D, 1, 2, LieConstraint::full(), &cache);
        CHECK(a == b);
        CHECK(cache.size() == 1);
    }
    {
        PointCountCache cache(path);
        CHECK(cache.size() == 1);
        DieudonneModule D = ss(2);
        CHECK(end_log_size(D, 1, 2, LieConstraint::full(), &cache) == 4);
        CHECK(cache.size() == 1); // warm hit, no new record
    }
    std::remove(path.c_str());
}

TEST_CASE("ordinary point counts match the closed form at every level") {
    // solutions are exactly diag(a, d) with a, d sigma-fixed, so the count
    // over GR(p^m, N) is p^(2m) for every N
    PointCountCache cache;
    for (uint64_t p : {2ull, 3ull}) {
        DieudonneModule O = ordinary(p);
        for (unsigned m = 1; m <= 3; ++m)
            for (unsigned N : {1u, 2u, 3u, 5u})
                CHECK(end_log_size(O, m, N, LieConstraint::full(), &cache) == 2 * m);
    }
}

TEST_CASE("a base-degree-two module runs through the whole pipeline") {
    // supersingular-type module defined over W(F_4): A = [[0, p g], [1, 0]]
    RingPtr R = GaloisRing::get(2, 4, 2);
    GRMatrix A(R, 2, 2);
    A.at(0, 1) = R->mul_scalar(R->generator(), 2);
    A.at(1, 0) = R->one();
    DieudonneModule D = from_matrix(2, 2, A, 4);
    CHECK(D.e == 2);
    CHECK(D.c == 1);
    CHECK(D.d == 1);
    CHECK(a_number(D) == 1);
    CHECK(newton_slopes(D) == std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    PointCountCache cache;
    // windows use multiples of the base degree only
    CHECK_THROWS_AS(end_log_size(D, 1, 3, LieConstraint::full(), &cache), Error);
    CentralizingSequence seq = gamma_sequence(D, 3, LieConstraint::full(), {}, &cache);
    CHECK(seq.g == std::vector<int>{0, 1, 1, 1});
    CHECK(*seq.n == 1);
}

TEST_CASE("degree violations are rejected") {
    RingPtr R = GaloisRing::get(2, 4, 2);
    GRMatrix A(R, 1, 1);
    A.at(0, 0) = R->one();
    DieudonneModule D = from_matrix(2, 2, A, 4);
    CHECK_THROWS_AS(end_log_size(D, 1, 3, LieConstraint::full()), Error); // 2 does not divide 3
    CHECK_THROWS_AS(end_log_size(D, 5, 2, LieConstraint::full()), PrecisionError);
}

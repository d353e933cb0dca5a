#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dmod/galois_ring.hpp"
#include "dmod/util.hpp"

using namespace dmod;

namespace {

// schoolbook polynomial multiplication followed by long division by the
// modulus, kept independent of GaloisRing::mul
std::vector<uint64_t> schoolbook_mul(const std::vector<uint64_t>& a,
                                     const std::vector<uint64_t>& b,
                                     const std::vector<uint64_t>& modulus, uint64_t q) {
    size_t n = a.size();
    std::vector<uint64_t> conv(2 * n - 1, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) conv[i + j] = (conv[i + j] + a[i] % q * (b[j] % q)) % q;
    for (size_t k = conv.size(); k-- > n;) {
        uint64_t t = conv[k] % q;
        conv[k] = 0;
        for (size_t j = 0; j < n; ++j)
            conv[k - n + j] = (conv[k - n + j] + (q - modulus[j] % q) % q * t) % q;
    }
    conv.resize(n);
    return conv;
}

GRElem random_elem(const RingPtr& R, Rng& rng) {
    std::vector<uint64_t> c(R->n());
    for (auto& v : c) v = rng.below(R->q());
    return R->from_coords(std::move(c));
}

} // namespace

TEST_CASE("canonical moduli are the lexicographically least irreducibles") {
    CHECK(canonical_modulus_mod_p(2, 1) == std::vector<uint64_t>{0, 1});
    CHECK(canonical_modulus_mod_p(2, 2) == std::vector<uint64_t>{1, 1, 1});
    CHECK(canonical_modulus_mod_p(2, 3) == std::vector<uint64_t>{1, 0, 1, 1});
    CHECK(canonical_modulus_mod_p(2, 4) == std::vector<uint64_t>{1, 0, 0, 1, 1});
    CHECK(canonical_modulus_mod_p(3, 2) == std::vector<uint64_t>{1, 0, 1});
    CHECK(canonical_modulus_mod_p(3, 3) == std::vector<uint64_t>{1, 0, 2, 1});
    CHECK(canonical_modulus_mod_p(5, 2) == std::vector<uint64_t>{1, 1, 1});
}

TEST_CASE("prime fields and prime rings have trivial frobenius") {
    RingPtr F2 = GaloisRing::get(2, 1, 1);
    for (uint64_t v = 0; v < 2; ++v) CHECK(frobenius(F2->from_int(v)) == F2->from_int(v));
    RingPtr Z4 = GaloisRing::get(2, 2, 1);
    for (uint64_t v = 0; v < 4; ++v) CHECK(frobenius(Z4->from_int(v)) == Z4->from_int(v));
    CHECK(Z4->mul(Z4->from_int(3), Z4->from_int(3)) == Z4->one());
}

TEST_CASE("F4: frobenius squares elements and has order two") {
    RingPtr F4 = GaloisRing::get(2, 1, 2);
    for (uint64_t c0 = 0; c0 < 2; ++c0)
        for (uint64_t c1 = 0; c1 < 2; ++c1) {
            GRElem x = F4->from_coords({c0, c1});
            CHECK(frobenius(x) == F4->mul(x, x));
            CHECK(frobenius(frobenius(x)) == x);
        }
    GRElem g = F4->generator();
    CHECK(F4->mul(g, F4->add(g, F4->one())) == F4->one());
}

TEST_CASE("GR(4,2) multiplication matches the schoolbook oracle exhaustively") {
    RingPtr R = GaloisRing::get(2, 2, 2);
    GRElem x = R->add(R->one(), R->mul_scalar(R->generator(), 2));
    CHECK(R->mul(x, x) == R->one()); // (1+2g)^2
    for (uint64_t a = 0; a < 16; ++a)
        for (uint64_t b = 0; b < 16; ++b) {
            GRElem xa = R->from_coords({a & 3, a >> 2});
            GRElem xb = R->from_coords({b & 3, b >> 2});
            CHECK(R->mul(xa, xb).c == schoolbook_mul(xa.c, xb.c, R->modulus(), 4));
        }
}

TEST_CASE("frobenius is a ring automorphism on GR(4,2), exhaustively") {
    RingPtr R = GaloisRing::get(2, 2, 2);
    for (uint64_t a = 0; a < 16; ++a)
        for (uint64_t b = 0; b < 16; ++b) {
            GRElem x = R->from_coords({a & 3, a >> 2});
            GRElem y = R->from_coords({b & 3, b >> 2});
            CHECK(frobenius(x * y) == frobenius(x) * frobenius(y));
            CHECK(frobenius(x + y) == frobenius(x) + frobenius(y));
        }
}

TEST_CASE("frobenius is a ring automorphism fixing the prime subring") {
    for (auto [p, m, n] : {std::tuple<uint64_t, unsigned, unsigned>{2, 2, 2},
                           {2, 3, 3},
                           {3, 2, 2},
                           {5, 2, 2}}) {
        RingPtr R = GaloisRing::get(p, m, n);
        Rng rng(42);
        for (int k = 0; k < 50; ++k) {
            GRElem x = random_elem(R, rng), y = random_elem(R, rng);
            CHECK(frobenius(x * y) == frobenius(x) * frobenius(y));
            CHECK(frobenius(x + y) == frobenius(x) + frobenius(y));
            CHECK(frobenius_inv(frobenius(x)) == x);
            GRElem z = x;
            for (unsigned i = 0; i < n; ++i) z = frobenius(z);
            CHECK(z == x); // sigma^n = id
            CHECK(reduce_precision(frobenius(x), 1) == reduce_precision(R->pow(x, p), 1));
        }
        for (uint64_t v = 0; v < std::min<uint64_t>(R->zr().q(), 9); ++v)
            CHECK(frobenius(R->from_int(v)) == R->from_int(v));
    }
}

TEST_CASE("reduction mod p is a ring homomorphism onto the residue field") {
    RingPtr R = GaloisRing::get(3, 3, 2);
    Rng rng(7);
    for (int k = 0; k < 30; ++k) {
        GRElem x = random_elem(R, rng), y = random_elem(R, rng);
        CHECK(reduce_precision(x * y, 1) == reduce_precision(x, 1) * reduce_precision(y, 1));
        CHECK(reduce_precision(x + y, 1) == reduce_precision(x, 1) + reduce_precision(y, 1));
        CHECK(reduce_precision(x, R->m()) == x);
    }
}

TEST_CASE("units invert and non-units are rejected") {
    RingPtr R = GaloisRing::get(2, 3, 3);
    Rng rng(11);
    unsigned inverted = 0;
    for (int k = 0; k < 60; ++k) {
        GRElem x = random_elem(R, rng);
        if (!R->is_unit(x)) {
            CHECK_THROWS_AS(inv(x), NonUnitError);
            continue;
        }
        CHECK(x * inv(x) == R->one());
        ++inverted;
    }
    CHECK(inverted > 20);
}

TEST_CASE("exact division by p and precision reduction") {
    RingPtr Z8 = GaloisRing::get(2, 3, 1);
    CHECK(exact_div_p(Z8->from_int(6), 1) == GaloisRing::get(2, 2, 1)->from_int(3));
    CHECK(exact_div_p(Z8->from_int(2), 1) == GaloisRing::get(2, 2, 1)->one());
    CHECK_THROWS_AS(exact_div_p(Z8->from_int(3), 1), DivisibilityError);
    CHECK_THROWS_AS(exact_div_p(Z8->from_int(4), 3), PrecisionError);
    RingPtr R = GaloisRing::get(3, 2, 2);
    GRElem x = R->mul_scalar(R->generator(), 3);
    CHECK(exact_div_p(x, 1) == GaloisRing::get(3, 1, 2)->generator());
}

TEST_CASE("embeddings land on roots and commute with frobenius") {
    RingPtr F2 = GaloisRing::get(2, 1, 1);
    RingPtr F4 = GaloisRing::get(2, 1, 2);
    RingPtr F16 = GaloisRing::get(2, 1, 4);
    CHECK(embed(F2->one(), F4) == F4->one());

    GRElem img = embed(F4->generator(), F16);
    GRElem val = F16->add(F16->mul(img, img), F16->add(img, F16->one()));
    CHECK(val.is_zero()); // satisfies x^2 + x + 1, the F4 modulus
    bool in_prime = true;
    for (size_t i = 1; i < img.c.size(); ++i) in_prime &= img.c[i] == 0;
    CHECK_FALSE(in_prime); // so its minimal polynomial has degree exactly 2

    Rng rng(3);
    for (int k = 0; k < 25; ++k) {
        GRElem x = random_elem(F4, rng);
        CHECK(embed(frobenius(x), F16) == frobenius(embed(x, F16)));
    }
    CHECK_THROWS_AS(embed(F4->generator(), GaloisRing::get(2, 1, 3)), EmbeddingError);
    CHECK_THROWS_AS(embed(F4->generator(), GaloisRing::get(2, 2, 4)), EmbeddingError);
}

TEST_CASE("embedding then reducing precision commutes") {
    RingPtr G42 = GaloisRing::get(2, 2, 2);
    RingPtr G44 = GaloisRing::get(2, 2, 4);
    RingPtr F16 = GaloisRing::get(2, 1, 4);
    Rng rng(5);
    for (int k = 0; k < 25; ++k) {
        GRElem x = random_elem(G42, rng);
        CHECK(reduce_precision(embed(x, G44), 1) == embed(reduce_precision(x, 1), F16));
    }
}

TEST_CASE("embedding towers through the prime ring commute") {
    RingPtr F2 = GaloisRing::get(2, 1, 1);
    RingPtr F4 = GaloisRing::get(2, 1, 2);
    RingPtr F16 = GaloisRing::get(2, 1, 4);
    for (uint64_t v = 0; v < 2; ++v) {
        GRElem x = F2->from_int(v);
        CHECK(embed(x, F16) == embed(embed(x, F4), F16));
    }
    RingPtr Z9_1 = GaloisRing::get(3, 2, 1);
    RingPtr Z9_2 = GaloisRing::get(3, 2, 2);
    RingPtr Z9_4 = GaloisRing::get(3, 2, 4);
    for (uint64_t v = 0; v < 9; ++v) {
        GRElem x = Z9_1->from_int(v);
        CHECK(embed(x, Z9_4) == embed(embed(x, Z9_2), Z9_4));
    }
}

TEST_CASE("embeddings are injective ring homomorphisms") {
    RingPtr S = GaloisRing::get(3, 2, 2);
    RingPtr T = GaloisRing::get(3, 2, 4);
    Rng rng(9);
    for (int k = 0; k < 25; ++k) {
        GRElem x = random_elem(S, rng), y = random_elem(S, rng);
        CHECK(embed(x * y, T) == embed(x, T) * embed(y, T));
        CHECK(embed(x + y, T) == embed(x, T) + embed(y, T));
        if (!(x == y)) CHECK(embed(x, T) != embed(y, T));
    }
}

TEST_CASE("capacity limits are enforced") {
    CHECK_THROWS_AS(GaloisRing::get(4, 1, 1), CapacityError);
    CHECK_THROWS_AS(GaloisRing::get(2, 63, 1), CapacityError);
    CHECK_THROWS_AS(GaloisRing::get(2, 1, 0), CapacityError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dmod/zpm_linalg.hpp"

using namespace dmod;

namespace {

// exhaustive count and collection of {x : Mx = 0} by enumerating the whole
// domain (q^cols vectors)
std::set<std::vector<uint64_t>> brute_kernel(const ZpmMatrix& M) {
    std::set<std::vector<uint64_t>> out;
    uint64_t q = M.zr.q();
    std::vector<uint64_t> x(M.cols, 0);
    for (;;) {
        bool zero = true;
        for (unsigned i = 0; i < M.rows && zero; ++i) {
            uint64_t acc = 0;
            for (unsigned j = 0; j < M.cols; ++j) acc = M.zr.add(acc, M.zr.mul(M.at(i, j), x[j]));
            zero = acc == 0;
        }
        if (zero) out.insert(x);
        unsigned k = 0;
        while (k < M.cols && x[k] == q - 1) x[k++] = 0;
        if (k == M.cols) break;
        ++x[k];
    }
    return out;
}

size_t brute_image_size(const ZpmMatrix& M) {
    std::set<std::vector<uint64_t>> img;
    uint64_t q = M.zr.q();
    std::vector<uint64_t> x(M.cols, 0);
    for (;;) {
        img.insert(mat_vec(M, x));
        unsigned k = 0;
        while (k < M.cols && x[k] == q - 1) x[k++] = 0;
        if (k == M.cols) break;
        ++x[k];
    }
    return img.size();
}

ZpmMatrix random_matrix(const Zpm& zr, unsigned r, unsigned c, Rng& rng) {
    ZpmMatrix M(zr, r, c);
    for (auto& e : M.e) e = rng.below(zr.q());
    return M;
}

uint64_t ipow(uint64_t b, unsigned e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

TEST_CASE("identity, scalar p, and zero matrices") {
    Zpm z4(2, 2);
    ZpmMatrix I(z4, 3, 3);
    for (unsigned i = 0; i < 3; ++i) I.at(i, i) = 1;
    CHECK(howell(I).kernel_log_size == 0);
    CHECK(kernel_log_size(I) == 0);
    CHECK(image_log_size(I) == 6); // full domain, p^(3*2)

    ZpmMatrix P(z4, 1, 1);
    P.at(0, 0) = 2;
    HowellForm hp = howell(P);
    CHECK(hp.kernel_log_size == 1);
    CHECK(image_log_size(P) == 1);

    ZpmMatrix Z(z4, 2, 3);
    CHECK(howell(Z).kernel_log_size == 6);
    CHECK(image_log_size(Z) == 0);
}

TEST_CASE("kernel samples of [p] over Z/p^2 hit both elements") {
    Zpm z4(2, 2);
    ZpmMatrix P(z4, 1, 1);
    P.at(0, 0) = 2;
    HowellForm hp = howell(P);
    std::set<uint64_t> seen;
    for (uint64_t s = 0; s < 100; ++s) {
        auto x = kernel_sample(hp, s);
        CHECK((x[0] == 0 || x[0] == 2));
        seen.insert(x[0]);
        CHECK(kernel_sample(hp, s) == x); // seed determinism
    }
    CHECK(seen.size() == 2);
}

TEST_CASE("identity kernel samples are always zero; zero matrix is seed-stable") {
    Zpm z9(3, 2);
    ZpmMatrix I(z9, 2, 2);
    I.at(0, 0) = I.at(1, 1) = 1;
    HowellForm hi = howell(I);
    for (uint64_t s = 0; s < 20; ++s)
        CHECK(kernel_sample(hi, s) == std::vector<uint64_t>{0, 0});
    ZpmMatrix Z(z9, 1, 2);
    HowellForm hz = howell(Z);
    CHECK(kernel_sample(hz, 4) == kernel_sample(hz, 4));
}

TEST_CASE("kernel sizes match exhaustive enumeration over Z/4 and Z/8") {
    for (auto [p, m] : {std::pair<uint64_t, unsigned>{2, 2}, {2, 3}}) {
        Zpm zr(p, m);
        Rng rng(1000 + m);
        for (int t = 0; t < 100; ++t) {
            ZpmMatrix M = random_matrix(zr, 3, 4, rng);
            auto ker = brute_kernel(M);
            HowellForm hf = howell(M);
            CHECK(ker.size() == ipow(p, hf.kernel_log_size));
            CHECK(kernel_log_size(M) == hf.kernel_log_size);
            // first isomorphism: |domain| = |kernel| * |image|
            CHECK(ipow(zr.q(), M.cols) == ker.size() * ipow(p, image_log_size(M)));
            // every generator annihilates, every sample is in the kernel
            for (const auto& g : hf.kernel_basis) CHECK(ker.count(g) == 1);
            for (uint64_t s = 0; s < 5; ++s) CHECK(ker.count(kernel_sample(hf, s)) == 1);
        }
    }
}

TEST_CASE("image sizes match exhaustive enumeration") {
    Zpm z4(2, 2);
    Rng rng(77);
    for (int t = 0; t < 40; ++t) {
        ZpmMatrix M = random_matrix(z4, 3, 3, rng);
        CHECK(brute_image_size(M) == ipow(2, image_log_size(M)));
    }
}

TEST_CASE("howell form is idempotent and spans the same row module") {
    for (auto [p, m] : {std::pair<uint64_t, unsigned>{2, 3}, {3, 2}, {5, 2}}) {
        Zpm zr(p, m);
        Rng rng(500 + p);
        for (int t = 0; t < 30; ++t) {
            ZpmMatrix M = random_matrix(zr, 4, 4, rng);
            HowellForm h1 = howell(M);
            HowellForm h2 = howell(h1.matrix);
            CHECK(h1.matrix == h2.matrix);
            // same kernel either way
            CHECK(kernel_log_size(M) == h1.kernel_log_size);
        }
    }
}

TEST_CASE("kernel sampling is uniform enough to see every coset") {
    // 2x2 over Z/4 with kernel of size 8: all 8 elements appear
    Zpm z4(2, 2);
    ZpmMatrix M(z4, 2, 2);
    M.at(0, 0) = 2;
    M.at(0, 1) = 0;
    M.at(1, 0) = 0;
    M.at(1, 1) = 2;
    HowellForm hf = howell(M);
    CHECK(hf.kernel_log_size == 2);
    auto ker = brute_kernel(M);
    std::set<std::vector<uint64_t>> seen;
    for (uint64_t s = 0; s < 200; ++s) seen.insert(kernel_sample(hf, s));
    CHECK(seen == ker);
}

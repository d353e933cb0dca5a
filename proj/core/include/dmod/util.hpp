#ifndef DMOD_UTIL_HPP
#define DMOD_UTIL_HPP

#include <cstdint>
#include <future>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmod {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameters outside the configured caps (p, n, m ranges).
struct CapacityError : Error { using Error::Error; };
// Inverse of a non-unit.
struct NonUnitError : Error { using Error::Error; };
// Degree divisibility violated, or no root found.
struct EmbeddingError : Error { using Error::Error; };
// exact_div_p on a non-divisible element.
struct DivisibilityError : Error { using Error::Error; };
// Working precision too small for the requested computation.
struct PrecisionError : Error { using Error::Error; };
// Input matrix does not define a module (p*A^{-1} not integral, ...).
struct NotDieudonneError : Error { using Error::Error; };
// exp/log called outside its nilpotency domain.
struct DomainError : Error { using Error::Error; };
// Point counts did not stabilize within the schedule; carries the evidence.
struct ExtractionError : Error { using Error::Error; };
// A sequence did not exhibit the structure needed to read off an invariant.
struct InconclusiveError : Error { using Error::Error; };

// Deterministic 64-bit stream; the standard splitmix64 finalizer.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seedable RNG with rejection-free-enough bounded draws; avoids
// std::uniform_int_distribution so streams are identical across platforms.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed ^ 0xd1b54a32d192ed03ULL) {}
    uint64_t next() { return splitmix64(state_); }
    // uniform in [0, bound), bound >= 1
    uint64_t below(uint64_t bound) {
        if (bound <= 1) return 0;
        uint64_t mask = ~uint64_t(0);
        uint64_t limit = mask - mask % bound;
        for (;;) {
            uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

  private:
    uint64_t state_;
};

inline uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const unsigned char* b = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= b[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline void hash_u64(uint64_t& h, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    h = fnv1a64(b, 8, h);
}

std::string to_hex(uint64_t v);

// Exact rational with small terms; used for Newton slopes.
struct Rat {
    long long num = 0;
    long long den = 1;
    Rat() = default;
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }
    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Deterministic parallel map: results come back in input order regardless of
// completion order. jobs <= 1 runs inline.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn fn, unsigned jobs)
    -> std::vector<decltype(fn(items[0]))> {
    using Out = decltype(fn(items[0]));
    std::vector<Out> out(items.size());
    if (jobs <= 1 || items.size() <= 1) {
        for (size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            out[i] = fn(items[i]);
        }
    };
    std::vector<std::future<void>> fs;
    unsigned nw = std::min<size_t>(jobs, items.size());
    for (unsigned w = 0; w < nw; ++w) fs.push_back(std::async(std::launch::async, worker));
    for (auto& f : fs) f.get();
    return out;
}

} // namespace dmod

#endif

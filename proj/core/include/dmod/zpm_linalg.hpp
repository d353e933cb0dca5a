#ifndef DMOD_ZPM_LINALG_HPP
#define DMOD_ZPM_LINALG_HPP

#include <vector>

#include "dmod/residues.hpp"

namespace dmod {

// Dense matrix over Z/p^m, canonical representatives in [0, p^m).
struct ZpmMatrix {
    Zpm zr;
    unsigned rows = 0, cols = 0;
    std::vector<uint64_t> e; // row-major

    ZpmMatrix() = default;
    ZpmMatrix(const Zpm& z, unsigned r, unsigned c)
        : zr(z), rows(r), cols(c), e(size_t(r) * c, 0) {}
    uint64_t& at(unsigned i, unsigned j) { return e[size_t(i) * cols + j]; }
    uint64_t at(unsigned i, unsigned j) const { return e[size_t(i) * cols + j]; }
    ZpmMatrix transposed() const;
    bool operator==(const ZpmMatrix& o) const {
        return rows == o.rows && cols == o.cols && e == o.e;
    }
};

// Howell normal form of the row span plus an exact description of the right
// kernel {x : Mx = 0}. The kernel is generated by kernel_basis[i], where
// generator i contributes coefficients in [0, p^kernel_orders[i]); the map
// (c_i) -> sum c_i g_i is a bijection onto the kernel, so
// |kernel| = p^kernel_log_size with kernel_log_size = sum of the orders.
struct HowellForm {
    ZpmMatrix matrix;
    unsigned kernel_log_size = 0;
    std::vector<std::vector<uint64_t>> kernel_basis;
    std::vector<unsigned> kernel_orders;
};

HowellForm howell(const ZpmMatrix& M);

// exponent k with |{x : Mx = 0}| = p^k, without materializing generators
unsigned kernel_log_size(const ZpmMatrix& M);

// exponent k with |{Mx : x}| = p^k
unsigned image_log_size(const ZpmMatrix& M);

// uniformly random kernel element, reproducible from the seed
std::vector<uint64_t> kernel_sample(const HowellForm& H, uint64_t seed);

// y = M x over Z/p^m
std::vector<uint64_t> mat_vec(const ZpmMatrix& M, const std::vector<uint64_t>& x);

} // namespace dmod

#endif

#include "dmod/zpm_linalg.hpp"

#include <algorithm>

namespace dmod {

ZpmMatrix ZpmMatrix::transposed() const {
    ZpmMatrix t(zr, cols, rows);
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

namespace {

struct Pivot {
    unsigned row, col, valn;
};

// In-place Howell reduction of a list of rows. Pivot selection: columns left
// to right, minimal p-adic valuation within the column, then lowest row.
// For each pivot of valuation v > 0 the row p^{m-v} * pivot_row is appended
// so the row span keeps the Howell property (every span element supported on
// later columns is a combination of later rows).
std::vector<Pivot> howell_inplace(std::vector<std::vector<uint64_t>>& w, unsigned cols,
                                  const Zpm& zr) {
    const unsigned m = zr.m();
    std::vector<Pivot> pivots;
    unsigned r = 0;
    for (unsigned j = 0; j < cols; ++j) {
        unsigned best = w.size(), bestval = m;
        for (unsigned i = r; i < w.size(); ++i) {
            unsigned v = zr.val(w[i][j]);
            if (v < bestval) {
                bestval = v;
                best = i;
                if (v == 0) break;
            }
        }
        if (best == w.size()) continue;
        std::swap(w[r], w[best]);
        const unsigned v = bestval;
        const uint64_t pv = zr.ppow(v);
        uint64_t unit = w[r][j] / pv;
        if (unit != 1) {
            uint64_t ui = zr.inv(unit);
            auto& row = w[r];
            for (unsigned k = j; k < cols; ++k) row[k] = zr.mul(row[k], ui);
        }
        for (unsigned i = r + 1; i < w.size(); ++i) {
            uint64_t a = w[i][j];
            if (!a) continue;
            uint64_t t = a / pv;
            auto& dst = w[i];
            const auto& src = w[r];
            for (unsigned k = j; k < cols; ++k)
                dst[k] = zr.sub(dst[k], zr.mul(t, src[k]));
        }
        if (v > 0) {
            std::vector<uint64_t> aux(cols, 0);
            const uint64_t s = zr.ppow(m - v);
            bool nonzero = false;
            for (unsigned k = j + 1; k < cols; ++k) {
                aux[k] = zr.mul(s, w[r][k]);
                nonzero |= aux[k] != 0;
            }
            if (nonzero) w.push_back(std::move(aux));
        }
        pivots.push_back({r, j, v});
        ++r;
    }
    w.resize(r);
    // reduce entries above each pivot into [0, p^v)
    for (const Pivot& pv : pivots) {
        const uint64_t pk = zr.ppow(pv.valn);
        for (unsigned i = 0; i < pv.row; ++i) {
            uint64_t t = w[i][pv.col] / pk;
            if (!t) continue;
            auto& dst = w[i];
            const auto& src = w[pv.row];
            for (unsigned k = pv.col; k < cols; ++k)
                dst[k] = zr.sub(dst[k], zr.mul(t, src[k]));
        }
    }
    return pivots;
}

std::vector<std::vector<uint64_t>> rows_of(const ZpmMatrix& M) {
    std::vector<std::vector<uint64_t>> w(M.rows, std::vector<uint64_t>(M.cols));
    for (unsigned i = 0; i < M.rows; ++i)
        for (unsigned j = 0; j < M.cols; ++j) w[i][j] = M.at(i, j);
    return w;
}

} // namespace

HowellForm howell(const ZpmMatrix& M) {
    HowellForm hf;
    // normal form of the row span
    {
        auto w = rows_of(M);
        howell_inplace(w, M.cols, M.zr);
        hf.matrix = ZpmMatrix(M.zr, w.size(), M.cols);
        for (unsigned i = 0; i < w.size(); ++i)
            for (unsigned j = 0; j < M.cols; ++j) hf.matrix.at(i, j) = w[i][j];
    }
    // right kernel from [M^T | I]: rows of the reduced form that vanish on
    // the first block project to Howell-structured generators of the kernel
    {
        const unsigned R = M.rows, C = M.cols;
        std::vector<std::vector<uint64_t>> w(C, std::vector<uint64_t>(R + C, 0));
        for (unsigned i = 0; i < C; ++i) {
            for (unsigned j = 0; j < R; ++j) w[i][j] = M.at(j, i);
            w[i][R + i] = 1 % M.zr.q();
        }
        auto pivots = howell_inplace(w, R + C, M.zr);
        for (const Pivot& pv : pivots) {
            if (pv.col < R) continue;
            std::vector<uint64_t> gen(C);
            for (unsigned j = 0; j < C; ++j) gen[j] = w[pv.row][R + j];
            hf.kernel_basis.push_back(std::move(gen));
            hf.kernel_orders.push_back(M.zr.m() - pv.valn);
            hf.kernel_log_size += M.zr.m() - pv.valn;
        }
    }
    return hf;
}

unsigned image_log_size(const ZpmMatrix& M) {
    ZpmMatrix t = M.transposed();
    auto w = rows_of(t);
    auto pivots = howell_inplace(w, t.cols, M.zr);
    unsigned e = 0;
    for (const Pivot& pv : pivots) e += M.zr.m() - pv.valn;
    return e;
}

unsigned kernel_log_size(const ZpmMatrix& M) {
    return M.cols * M.zr.m() - image_log_size(M);
}

std::vector<uint64_t> kernel_sample(const HowellForm& H, uint64_t seed) {
    const Zpm& zr = H.matrix.zr;
    unsigned C = H.kernel_basis.empty() ? H.matrix.cols : H.kernel_basis[0].size();
    std::vector<uint64_t> x(C, 0);
    Rng rng(seed);
    for (size_t i = 0; i < H.kernel_basis.size(); ++i) {
        uint64_t c = rng.below(zr.ppow(H.kernel_orders[i]));
        if (!c) continue;
        const auto& g = H.kernel_basis[i];
        for (unsigned j = 0; j < C; ++j) x[j] = zr.add(x[j], zr.mul(c, g[j]));
    }
    return x;
}

std::vector<uint64_t> mat_vec(const ZpmMatrix& M, const std::vector<uint64_t>& x) {
    std::vector<uint64_t> y(M.rows, 0);
    for (unsigned i = 0; i < M.rows; ++i) {
        uint64_t acc = 0;
        for (unsigned j = 0; j < M.cols; ++j)
            acc = M.zr.add(acc, M.zr.mul(M.at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

} // namespace dmod

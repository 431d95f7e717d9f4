#include "bbqec/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace bbqec::gf2 {

BitMatrix::BitMatrix(std::size_t r, std::size_t c)
    : rows(r), cols(c), words_per_row((c + 63) / 64), data(r * ((c + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) m.set(i, i, true);
    return m;
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    uint64_t* d = row(dst);
    const uint64_t* s = row(src);
    for (std::size_t w = 0; w < words_per_row; w++) d[w] ^= s[w];
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
    std::size_t n = 0;
    const uint64_t* p = row(r);
    for (std::size_t w = 0; w < words_per_row; w++) n += std::popcount(p[w]);
    return n;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    const uint64_t* p = row(r);
    for (std::size_t w = 0; w < words_per_row; w++)
        if (p[w]) return false;
    return true;
}

BitVec make_bitvec(std::size_t nbits) { return BitVec((nbits + 63) / 64, 0); }

std::size_t bv_weight(const BitVec& v) {
    std::size_t n = 0;
    for (uint64_t w : v) n += std::popcount(w);
    return n;
}

bool bv_is_zero(const BitVec& v) {
    for (uint64_t w : v)
        if (w) return false;
    return true;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix t(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; r++) {
        const uint64_t* p = m.row(r);
        for (std::size_t w = 0; w < m.words_per_row; w++) {
            uint64_t bits = p[w];
            while (bits) {
                const std::size_t c = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                t.set(c, r, true);
            }
        }
    }
    return t;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    BitMatrix out(a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; r++) {
        uint64_t* dst = out.row(r);
        const uint64_t* src = a.row(r);
        for (std::size_t w = 0; w < a.words_per_row; w++) {
            uint64_t bits = src[w];
            while (bits) {
                const std::size_t k = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                const uint64_t* brow = b.row(k);
                for (std::size_t bw = 0; bw < b.words_per_row; bw++) dst[bw] ^= brow[bw];
            }
        }
    }
    return out;
}

bool is_zero(const BitMatrix& m) {
    for (uint64_t w : m.data)
        if (w) return false;
    return true;
}

std::vector<std::size_t> rref_inplace(BitMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < m.cols && next_row < m.rows; c++) {
        std::size_t pivot = next_row;
        while (pivot < m.rows && !m.get(pivot, c)) pivot++;
        if (pivot == m.rows) continue;
        if (pivot != next_row) {
            for (std::size_t w = 0; w < m.words_per_row; w++)
                std::swap(m.row(pivot)[w], m.row(next_row)[w]);
        }
        for (std::size_t r = 0; r < m.rows; r++) {
            if (r != next_row && m.get(r, c)) m.xor_row_into(next_row, r);
        }
        pivots.push_back(c);
        next_row++;
    }
    return pivots;
}

std::size_t rank(const BitMatrix& m) {
    BitMatrix tmp = m;
    return rref_inplace(tmp).size();
}

BitMatrix nullspace_basis(const BitMatrix& m) {
    BitMatrix r = m;
    const std::vector<std::size_t> pivots = rref_inplace(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    const std::size_t dim = m.cols - pivots.size();
    BitMatrix basis(dim, m.cols);
    std::size_t k = 0;
    for (std::size_t free_col = 0; free_col < m.cols; free_col++) {
        if (is_pivot[free_col]) continue;
        basis.set(k, free_col, true);
        for (std::size_t p = 0; p < pivots.size(); p++) {
            if (r.get(p, free_col)) basis.set(k, pivots[p], true);
        }
        k++;
    }
    return basis;
}

std::optional<BitVec> solve_affine(const BitMatrix& m, const BitVec& s) {
    // Eliminate on [m | s].
    BitMatrix aug(m.rows, m.cols + 1);
    for (std::size_t r = 0; r < m.rows; r++) {
        uint64_t* dst = aug.row(r);
        const uint64_t* src = m.row(r);
        for (std::size_t w = 0; w < m.words_per_row; w++) dst[w] = src[w];
        if (bv_get(s, r)) aug.set(r, m.cols, true);
    }
    // padding of the widened row must stay clean
    BitVec e = make_bitvec(m.cols);
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < m.cols && next_row < m.rows; c++) {
        std::size_t pivot = next_row;
        while (pivot < aug.rows && !aug.get(pivot, c)) pivot++;
        if (pivot == aug.rows) continue;
        if (pivot != next_row)
            for (std::size_t w = 0; w < aug.words_per_row; w++)
                std::swap(aug.row(pivot)[w], aug.row(next_row)[w]);
        for (std::size_t r = 0; r < aug.rows; r++)
            if (r != next_row && aug.get(r, c)) aug.xor_row_into(next_row, r);
        pivots.push_back(c);
        next_row++;
    }
    for (std::size_t r = next_row; r < aug.rows; r++)
        if (aug.get(r, m.cols)) return std::nullopt;
    for (std::size_t p = 0; p < pivots.size(); p++)
        if (aug.get(p, m.cols)) bv_set(e, pivots[p], true);
    return e;
}

BitMatrix inverse(const BitMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows;
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++)
            if (m.get(r, c)) aug.set(r, c, true);
        aug.set(r, n + r, true);
    }
    const auto pivots = rref_inplace(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw std::invalid_argument("inverse: matrix is singular");
    BitMatrix out(n, n);
    for (std::size_t r = 0; r < n; r++)
        for (std::size_t c = 0; c < n; c++)
            if (aug.get(r, n + c)) out.set(r, c, true);
    return out;
}

BitVec matvec(const BitMatrix& m, const BitVec& x) {
    BitVec y = make_bitvec(m.rows);
    for (std::size_t r = 0; r < m.rows; r++) {
        const uint64_t* p = m.row(r);
        uint64_t acc = 0;
        for (std::size_t w = 0; w < m.words_per_row; w++) acc ^= p[w] & x[w];
        if (std::popcount(acc) & 1) bv_set(y, r, true);
    }
    return y;
}

bool in_rowspace_rref(const BitMatrix& rref, const std::vector<std::size_t>& pivots,
                      const BitVec& v) {
    BitVec tmp = v;
    for (std::size_t p = 0; p < pivots.size(); p++) {
        if (bv_get(tmp, pivots[p])) {
            const uint64_t* row = rref.row(p);
            for (std::size_t w = 0; w < rref.words_per_row; w++) tmp[w] ^= row[w];
        }
    }
    return bv_is_zero(tmp);
}

void SparseIndexMatrix::validate() const {
    if (row_indices.size() != rows)
        throw std::invalid_argument("SparseIndexMatrix: row count mismatch");
    for (const auto& r : row_indices) {
        for (std::size_t k = 0; k < r.size(); k++) {
            if (r[k] >= cols) throw std::invalid_argument("SparseIndexMatrix: index out of range");
            if (k > 0 && r[k] <= r[k - 1])
                throw std::invalid_argument("SparseIndexMatrix: indices not strictly increasing");
        }
    }
}

}  // namespace bbqec::gf2

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace bbqec::gf2 {

// Dense row-major bit-packed matrix over GF(2). Padding bits of the last
// word in each row are always zero.
struct BitMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t words_per_row = 0;
    std::vector<uint64_t> data;

    BitMatrix() = default;
    BitMatrix(std::size_t r, std::size_t c);

    static BitMatrix identity(std::size_t n);

    bool get(std::size_t r, std::size_t c) const {
        return (data[r * words_per_row + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t& w = data[r * words_per_row + (c >> 6)];
        const uint64_t m = uint64_t(1) << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(std::size_t r, std::size_t c) {
        data[r * words_per_row + (c >> 6)] ^= uint64_t(1) << (c & 63);
    }

    uint64_t* row(std::size_t r) { return data.data() + r * words_per_row; }
    const uint64_t* row(std::size_t r) const { return data.data() + r * words_per_row; }

    void xor_row_into(std::size_t src, std::size_t dst);
    std::size_t row_weight(std::size_t r) const;
    bool row_is_zero(std::size_t r) const;

    bool operator==(const BitMatrix& o) const = default;
};

using BitVec = std::vector<uint64_t>;

BitVec make_bitvec(std::size_t nbits);
inline bool bv_get(const BitVec& v, std::size_t i) { return (v[i >> 6] >> (i & 63)) & 1u; }
inline void bv_set(BitVec& v, std::size_t i, bool b) {
    const uint64_t m = uint64_t(1) << (i & 63);
    v[i >> 6] = b ? (v[i >> 6] | m) : (v[i >> 6] & ~m);
}
inline void bv_flip(BitVec& v, std::size_t i) { v[i >> 6] ^= uint64_t(1) << (i & 63); }
std::size_t bv_weight(const BitVec& v);
bool bv_is_zero(const BitVec& v);

BitMatrix transpose(const BitMatrix& m);
BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);
bool is_zero(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

// Reduced row echelon form in place. Pivot selection is deterministic:
// leftmost unused column, topmost remaining row. Returns pivot columns.
std::vector<std::size_t> rref_inplace(BitMatrix& m);

// Rows form a basis of the right kernel: m * v^T = 0 for every row v.
BitMatrix nullspace_basis(const BitMatrix& m);

// Solve m * e = s. Returns std::nullopt when s is outside the column space.
std::optional<BitVec> solve_affine(const BitMatrix& m, const BitVec& s);

// Inverse of a square invertible matrix; throws if singular.
BitMatrix inverse(const BitMatrix& m);

// matvec: y = m * x  (x over cols bits, y over rows bits)
BitVec matvec(const BitMatrix& m, const BitVec& x);

// True iff v lies in the row space described by a matrix already in RREF
// with the given pivot columns.
bool in_rowspace_rref(const BitMatrix& rref, const std::vector<std::size_t>& pivots,
                      const BitVec& v);

// Sparse matrix kept as sorted column-index lists per row.
struct SparseIndexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<uint32_t>> row_indices;

    SparseIndexMatrix() = default;
    SparseIndexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_indices(r) {}
    void validate() const;  // throws on unsorted/out-of-range indices
};

}  // namespace bbqec::gf2

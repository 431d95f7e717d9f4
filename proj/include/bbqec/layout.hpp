#pragma once

#include <string>
#include <vector>

#include "bbqec/bbcode.hpp"

namespace bbqec::layout {

struct GridPos {
    int row = 0;
    int col = 0;
    bool operator==(const GridPos&) const = default;
};

// A Lemma-4 toric layout candidate: horizontal translation A_i A_j^T with
// order ell', vertical translation B_g B_h^T with order m'; the layout grid
// is 2m' rows by 2ell' columns.
struct ToricLayout {
    int i = 0, j = 0, g = 0, h = 0;       // 1-based indices into A/B terms
    std::pair<int, int> eps;              // exponents of A_i A_j^T
    std::pair<int, int> delta;            // exponents of B_g B_h^T
    int ell_prime = 0;                    // ord(A_i A_j^T)
    int m_prime = 0;                      // ord(B_g B_h^T)
    int grid_rows() const { return 2 * m_prime; }
    int grid_cols() const { return 2 * ell_prime; }
};

// All (i,j,g,h) satisfying Lemma 4 conditions 1 and 2. Empty when the code
// has no toric layout.
std::vector<ToricLayout> enumerate_toric_layouts(const code::BBCode& code);

struct CheckSupport {
    int check = 0;                    // check label (group element index)
    GridPos site;                     // check qubit position
    std::vector<int> qubits;          // 6 data-qubit indices, near 4 first
    std::vector<GridPos> qubit_pos;   // same order as `qubits`
    // near couplings are the first four entries; the last two are the
    // distant pair (left-block then right-block qubit)
};

struct Placement {
    ToricLayout layout;
    int rows = 0, cols = 0;
    std::vector<GridPos> data_pos;     // index 0..n-1 (L block then R block)
    std::vector<GridPos> xcheck_pos;   // ell*m entries
    std::vector<GridPos> zcheck_pos;   // ell*m entries
    std::vector<CheckSupport> z_supports;
    std::vector<CheckSupport> x_supports;
};

// Deterministic placement with the base Z-check at the origin. Throws when
// the layout is degenerate (ell' or m' < 2) or fails Lemma 4.
Placement embed(const code::BBCode& code, const ToricLayout& layout);

struct GeneratorClassification {
    std::vector<bool> z_long;          // per Z check
    std::vector<bool> x_long;          // per X check
    double mask_percent = 0.0;         // fraction of long checks per type
    double beta = 0.0;                 // checks-total = M^(2*beta)
    std::vector<double> gamma_z;       // per Z check
    std::vector<double> gamma_x;       // per X check
    // empirical f(gamma): distinct gamma values with relative frequency
    std::vector<std::pair<double, double>> size_histogram;
};

// A check is long-range iff its support, placed on the open planar grid,
// cannot avoid crossing the boundary of the longer grid axis (ties broken
// toward the horizontal axis). gamma uses the planar Chebyshev diameter.
GeneratorClassification classify_generators(const Placement& p);

// Discrete form of the total-path-length estimate: M^2 * sum f(g) M^g over
// the histogram, restricted to bins with gamma <= gamma_cutoff.
double path_length_estimate(const GeneratorClassification& c, double grid_m,
                            double gamma_cutoff = 1.0);

// Text lines `Q idx row col`, `XC idx row col`, `ZC idx row col`.
std::string export_placement(const Placement& p);

}  // namespace bbqec::layout

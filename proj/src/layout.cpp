#include "bbqec/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bbqec::layout {

using code::Axis;
using code::BBCode;

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

std::pair<int, int> sub_exp(std::pair<int, int> a, std::pair<int, int> b, int ell, int em) {
    return {mod(a.first - b.first, ell), mod(a.second - b.second, em)};
}

std::pair<int, int> add_exp(std::pair<int, int> a, std::pair<int, int> b, int ell, int em) {
    return {mod(a.first + b.first, ell), mod(a.second + b.second, em)};
}

int element_order(std::pair<int, int> e, int ell, int em) {
    const int oa = e.first ? ell / std::gcd(ell, e.first) : 1;
    const int ob = e.second ? em / std::gcd(em, e.second) : 1;
    return oa / std::gcd(oa, ob) * ob;  // lcm
}

// Lemma 4 condition 1: walk (delta)^b (eps)^a from label 0 and check that
// every group element is reached.
bool generates_group(std::pair<int, int> eps, std::pair<int, int> delta, int ell, int em) {
    const int oe = element_order(eps, ell, em);
    const int od = element_order(delta, ell, em);
    std::vector<bool> seen(ell * em, false);
    int count = 0;
    for (int b = 0; b < od; b++) {
        for (int a = 0; a < oe; a++) {
            const int alpha = mod(a * eps.first + b * delta.first, ell);
            const int beta = mod(a * eps.second + b * delta.second, em);
            const int idx = alpha * em + beta;
            if (!seen[idx]) {
                seen[idx] = true;
                count++;
            }
        }
    }
    return count == ell * em;
}

}  // namespace

std::vector<ToricLayout> enumerate_toric_layouts(const BBCode& code) {
    const auto& spec = code.spec;
    const int ell = spec.ell, em = spec.em;
    std::vector<ToricLayout> out;
    for (int i = 1; i <= 3; i++) {
        for (int j = 1; j <= 3; j++) {
            for (int g = 1; g <= 3; g++) {
                for (int h = 1; h <= 3; h++) {
                    const auto eps = sub_exp(spec.term_exponents(spec.a_terms[i - 1]),
                                             spec.term_exponents(spec.a_terms[j - 1]), ell, em);
                    const auto delta = sub_exp(spec.term_exponents(spec.b_terms[g - 1]),
                                               spec.term_exponents(spec.b_terms[h - 1]), ell, em);
                    const int oe = element_order(eps, ell, em);
                    const int od = element_order(delta, ell, em);
                    if (oe * od != ell * em) continue;              // condition 2
                    if (!generates_group(eps, delta, ell, em)) continue;  // condition 1
                    ToricLayout lay;
                    lay.i = i;
                    lay.j = j;
                    lay.g = g;
                    lay.h = h;
                    lay.eps = eps;
                    lay.delta = delta;
                    lay.ell_prime = oe;
                    lay.m_prime = od;
                    out.push_back(lay);
                }
            }
        }
    }
    return out;
}

Placement embed(const BBCode& code, const ToricLayout& layout) {
    const auto& spec = code.spec;
    const int ell = spec.ell, em = spec.em;
    const int gsize = ell * em;
    if (layout.ell_prime * layout.m_prime != gsize ||
        !generates_group(layout.eps, layout.delta, ell, em))
        throw std::invalid_argument("embed: layout does not satisfy Lemma 4");
    if (layout.ell_prime < 2 || layout.m_prime < 2)
        throw std::invalid_argument("embed: degenerate grid (need ell', m' >= 2)");

    Placement p;
    p.layout = layout;
    p.rows = layout.grid_rows();
    p.cols = layout.grid_cols();
    p.data_pos.assign(2 * gsize, {});
    p.xcheck_pos.assign(gsize, {});
    p.zcheck_pos.assign(gsize, {});

    const auto aj = spec.term_exponents(spec.a_terms[layout.j - 1]);
    const auto bh = spec.term_exponents(spec.b_terms[layout.h - 1]);
    auto gidx = [em](std::pair<int, int> e) { return e.first * em + e.second; };

    // Tile (u, w): Z-check labeled w*eps + u*delta at (2u, 2w); the right
    // qubit, upper qubit and X-check follow from the layout generators.
    for (int u = 0; u < layout.m_prime; u++) {
        for (int w = 0; w < layout.ell_prime; w++) {
            const std::pair<int, int> c = {mod(w * layout.eps.first + u * layout.delta.first, ell),
                                           mod(w * layout.eps.second + u * layout.delta.second, em)};
            p.zcheck_pos[gidx(c)] = {2 * u, 2 * w};
            p.data_pos[gsize + gidx(sub_exp(c, aj, ell, em))] = {2 * u, 2 * w + 1};  // R block
            p.data_pos[gidx(sub_exp(c, bh, ell, em))] = {2 * u + 1, 2 * w};          // L block
            p.xcheck_pos[gidx(sub_exp(sub_exp(c, aj, ell, em), bh, ell, em))] = {2 * u + 1,
                                                                                 2 * w + 1};
        }
    }

    // Support lists: near pair order (left, right, down, up) then far L, far R.
    const int fi = layout.i, fj = layout.j, fg = layout.g, fh = layout.h;
    int far_a = 6 - fi - fj;  // index in 1..3 not in {i, j}
    int far_b = 6 - fg - fh;
    if (fi == fj || fg == fh)
        throw std::invalid_argument("embed: layout with repeated term index is degenerate");

    auto z_support = [&](std::pair<int, int> c) {
        CheckSupport s;
        s.check = gidx(c);
        s.site = p.zcheck_pos[s.check];
        auto push = [&](int qubit) {
            s.qubits.push_back(qubit);
            s.qubit_pos.push_back(p.data_pos[qubit]);
        };
        const auto& a = spec.a_terms;
        const auto& b = spec.b_terms;
        push(gsize + gidx(sub_exp(c, spec.term_exponents(a[fi - 1]), ell, em)));  // left R
        push(gsize + gidx(sub_exp(c, spec.term_exponents(a[fj - 1]), ell, em)));  // right R
        push(gidx(sub_exp(c, spec.term_exponents(b[fg - 1]), ell, em)));          // down L
        push(gidx(sub_exp(c, spec.term_exponents(b[fh - 1]), ell, em)));          // up L
        push(gidx(sub_exp(c, spec.term_exponents(b[far_b - 1]), ell, em)));       // far L
        push(gsize + gidx(sub_exp(c, spec.term_exponents(a[far_a - 1]), ell, em)));  // far R
        return s;
    };
    auto x_support = [&](std::pair<int, int> cx) {
        CheckSupport s;
        s.check = gidx(cx);
        s.site = p.xcheck_pos[s.check];
        auto push = [&](int qubit) {
            s.qubits.push_back(qubit);
            s.qubit_pos.push_back(p.data_pos[qubit]);
        };
        const auto& a = spec.a_terms;
        const auto& b = spec.b_terms;
        push(gidx(add_exp(cx, spec.term_exponents(a[fj - 1]), ell, em)));            // left L
        push(gidx(add_exp(cx, spec.term_exponents(a[fi - 1]), ell, em)));            // right L
        push(gsize + gidx(add_exp(cx, spec.term_exponents(b[fh - 1]), ell, em)));    // down R
        push(gsize + gidx(add_exp(cx, spec.term_exponents(b[fg - 1]), ell, em)));    // up R
        push(gidx(add_exp(cx, spec.term_exponents(a[far_a - 1]), ell, em)));         // far L
        push(gsize + gidx(add_exp(cx, spec.term_exponents(b[far_b - 1]), ell, em)));  // far R
        return s;
    };

    p.z_supports.reserve(gsize);
    p.x_supports.reserve(gsize);
    for (int alpha = 0; alpha < ell; alpha++) {
        for (int beta = 0; beta < em; beta++) {
            p.z_supports.push_back(z_support({alpha, beta}));
            p.x_supports.push_back(x_support({alpha, beta}));
        }
    }

    // Sanity: each check must have exactly 4 lattice nearest neighbors.
    auto near_count = [&](const CheckSupport& s) {
        int cnt = 0;
        for (const auto& q : s.qubit_pos) {
            int dr = std::abs(q.row - s.site.row);
            int dc = std::abs(q.col - s.site.col);
            dr = std::min(dr, p.rows - dr);
            dc = std::min(dc, p.cols - dc);
            if (dr + dc == 1) cnt++;
        }
        return cnt;
    };
    for (const auto& s : p.z_supports)
        if (near_count(s) != 4) throw std::runtime_error("embed: Z check missing near neighbors");
    for (const auto& s : p.x_supports)
        if (near_count(s) != 4) throw std::runtime_error("embed: X check missing near neighbors");
    return p;
}

namespace {

// Support wraps an axis iff no minimal enclosing circular arc avoids the
// 0 boundary, i.e. the seam gap (max -> min) is not a maximum gap.
bool wraps_axis(std::vector<int> coords, int size) {
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    if (coords.size() <= 1) return false;
    int max_gap = 0;
    for (std::size_t k = 0; k + 1 < coords.size(); k++)
        max_gap = std::max(max_gap, coords[k + 1] - coords[k]);
    const int seam_gap = coords.front() + size - coords.back();
    return seam_gap < max_gap;
}

double chebyshev_diameter(const CheckSupport& s) {
    std::vector<GridPos> pts = s.qubit_pos;
    pts.push_back(s.site);
    int best = 0;
    for (std::size_t a = 0; a < pts.size(); a++)
        for (std::size_t b = a + 1; b < pts.size(); b++)
            best = std::max(best, std::max(std::abs(pts[a].row - pts[b].row),
                                           std::abs(pts[a].col - pts[b].col)));
    return double(best);
}

}  // namespace

GeneratorClassification classify_generators(const Placement& p) {
    GeneratorClassification out;
    const bool rows_long = p.rows > p.cols;  // tie -> horizontal (cols)
    const int long_size = rows_long ? p.rows : p.cols;
    const double m_dim = double(std::max(p.rows, p.cols));

    auto run = [&](const std::vector<CheckSupport>& sups, std::vector<bool>& longs,
                   std::vector<double>& gammas) {
        int nlong = 0;
        for (const auto& s : sups) {
            std::vector<int> coords;
            coords.reserve(7);
            for (const auto& q : s.qubit_pos) coords.push_back(rows_long ? q.row : q.col);
            coords.push_back(rows_long ? s.site.row : s.site.col);
            const bool is_long = wraps_axis(coords, long_size);
            longs.push_back(is_long);
            if (is_long) nlong++;
            const double diam = std::max(1.0, chebyshev_diameter(s));
            gammas.push_back(std::log(diam) / std::log(m_dim));
        }
        return nlong;
    };
    const int nz = run(p.z_supports, out.z_long, out.gamma_z);
    run(p.x_supports, out.x_long, out.gamma_x);
    out.mask_percent = double(nz) / double(p.z_supports.size());

    const std::size_t total = p.z_supports.size() + p.x_supports.size();
    out.beta = std::log(double(total)) / (2.0 * std::log(m_dim));

    std::map<double, int> hist;
    for (double g : out.gamma_z) hist[g]++;
    for (double g : out.gamma_x) hist[g]++;
    for (const auto& [g, cnt] : hist)
        out.size_histogram.emplace_back(g, double(cnt) / double(total));
    return out;
}

double path_length_estimate(const GeneratorClassification& c, double grid_m,
                            double gamma_cutoff) {
    if (c.size_histogram.empty()) throw std::invalid_argument("empty size histogram");
    double acc = 0.0;
    for (const auto& [g, f] : c.size_histogram)
        if (g <= gamma_cutoff) acc += f * std::pow(grid_m, g);
    return grid_m * grid_m * acc;
}

std::string export_placement(const Placement& p) {
    std::ostringstream out;
    for (std::size_t i = 0; i < p.data_pos.size(); i++)
        out << "Q " << i << " " << p.data_pos[i].row << " " << p.data_pos[i].col << "\n";
    for (std::size_t i = 0; i < p.xcheck_pos.size(); i++)
        out << "XC " << i << " " << p.xcheck_pos[i].row << " " << p.xcheck_pos[i].col << "\n";
    for (std::size_t i = 0; i < p.zcheck_pos.size(); i++)
        out << "ZC " << i << " " << p.zcheck_pos[i].row << " " << p.zcheck_pos[i].col << "\n";
    return out.str();
}

}  // namespace bbqec::layout

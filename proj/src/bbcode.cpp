#include "bbqec/bbcode.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bbqec::code {

std::pair<int, int> BBCodeSpec::term_exponents(const MonomialTerm& t) const {
    if (t.axis == Axis::X) return {((t.exponent % ell) + ell) % ell, 0};
    return {0, ((t.exponent % em) + em) % em};
}

static MonomialTerm parse_monomial(const std::string& tok) {
    if (tok == "1") return {Axis::X, 0};
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'y'))
        throw std::invalid_argument("bad monomial: " + tok);
    MonomialTerm t;
    t.axis = tok[0] == 'x' ? Axis::X : Axis::Y;
    t.exponent = std::stoi(tok.substr(1));
    if (t.exponent < 0) throw std::invalid_argument("negative exponent: " + tok);
    return t;
}

static std::array<MonomialTerm, 3> parse_poly(const std::string& s) {
    std::array<MonomialTerm, 3> terms;
    std::size_t pos = 0;
    int count = 0;
    while (pos <= s.size()) {
        const std::size_t plus = s.find('+', pos);
        const std::string tok = s.substr(pos, plus == std::string::npos ? plus : plus - pos);
        if (count >= 3) throw std::invalid_argument("polynomial needs exactly 3 terms: " + s);
        terms[count++] = parse_monomial(tok);
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    if (count != 3) throw std::invalid_argument("polynomial needs exactly 3 terms: " + s);
    return terms;
}

BBCodeSpec parse_spec(const std::string& line) {
    BBCodeSpec spec;
    std::istringstream in(line);
    std::string tok;
    bool have_ell = false, have_em = false, have_a = false, have_b = false;
    while (in >> tok) {
        const std::size_t eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad token: " + tok);
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "ell") {
            spec.ell = std::stoi(val);
            have_ell = true;
        } else if (key == "m") {
            spec.em = std::stoi(val);
            have_em = true;
        } else if (key == "A") {
            spec.a_terms = parse_poly(val);
            have_a = true;
        } else if (key == "B") {
            spec.b_terms = parse_poly(val);
            have_b = true;
        } else {
            throw std::invalid_argument("unknown key: " + key);
        }
    }
    if (!(have_ell && have_em && have_a && have_b))
        throw std::invalid_argument("spec line needs ell, m, A, B");
    return spec;
}

static std::string format_monomial(const MonomialTerm& t) {
    if (t.exponent == 0) return "1";
    std::string s(1, t.axis == Axis::X ? 'x' : 'y');
    return s + std::to_string(t.exponent);
}

std::string format_spec(const BBCodeSpec& spec) {
    std::ostringstream out;
    out << "ell=" << spec.ell << " m=" << spec.em << " A=";
    for (int i = 0; i < 3; i++) out << (i ? "+" : "") << format_monomial(spec.a_terms[i]);
    out << " B=";
    for (int i = 0; i < 3; i++) out << (i ? "+" : "") << format_monomial(spec.b_terms[i]);
    return out.str();
}

// Group element (alpha, beta) of Z_ell x Z_em encoded as alpha*em + beta.
static int gidx(int alpha, int beta, int em) { return alpha * em + beta; }

static void check_terms(const BBCodeSpec& spec, const std::array<MonomialTerm, 3>& terms,
                        const char* name) {
    for (int i = 0; i < 3; i++) {
        for (int j = i + 1; j < 3; j++) {
            if (spec.term_exponents(terms[i]) == spec.term_exponents(terms[j]))
                throw std::invalid_argument(std::string(name) +
                                            ": duplicate terms cancel over GF(2)");
        }
    }
}

BBCode build_code(const BBCodeSpec& spec) {
    if (spec.ell < 2 || spec.em < 2) throw std::invalid_argument("need ell, m >= 2");
    check_terms(spec, spec.a_terms, "A");
    check_terms(spec, spec.b_terms, "B");

    const int ell = spec.ell, em = spec.em;
    const int g = ell * em;
    BBCode code;
    code.spec = spec;
    code.n = 2 * g;
    code.h_x = gf2::BitMatrix(g, 2 * g);
    code.h_z = gf2::BitMatrix(g, 2 * g);

    // Row c of H_X touches left qubits {c + a_i} and right qubits {c + b_i};
    // row c of H_Z touches left {c - b_i} and right {c - a_i}.
    for (int alpha = 0; alpha < ell; alpha++) {
        for (int beta = 0; beta < em; beta++) {
            const int c = gidx(alpha, beta, em);
            for (const auto& t : spec.a_terms) {
                const auto [ea, eb] = spec.term_exponents(t);
                code.h_x.set(c, gidx((alpha + ea) % ell, (beta + eb) % em, em), true);
                code.h_z.set(c, g + gidx((alpha - ea + ell) % ell, (beta - eb + em) % em, em),
                             true);
            }
            for (const auto& t : spec.b_terms) {
                const auto [ea, eb] = spec.term_exponents(t);
                code.h_x.set(c, g + gidx((alpha + ea) % ell, (beta + eb) % em, em), true);
                code.h_z.set(c, gidx((alpha - ea + ell) % ell, (beta - eb + em) % em, em), true);
            }
        }
    }

    const std::size_t rx = gf2::rank(code.h_x);
    const std::size_t rz = gf2::rank(code.h_z);
    code.k = code.n - int(rx) - int(rz);

    if (code.k > 0) {
        auto [lx, lz] = logical_operators(code);
        code.logical_x = std::move(lx);
        code.logical_z = std::move(lz);
    }
    return code;
}

// Pick rows of `candidates` independent of rowspace(stab); returns exactly
// `want` rows.
static gf2::BitMatrix pick_independent(const gf2::BitMatrix& candidates,
                                       const gf2::BitMatrix& stab, std::size_t want) {
    gf2::BitMatrix acc(stab.rows + want, stab.cols);
    for (std::size_t r = 0; r < stab.rows; r++)
        for (std::size_t w = 0; w < stab.words_per_row; w++)
            acc.row(r)[w] = stab.row(r)[w];
    std::size_t have = stab.rows;
    gf2::BitMatrix out(want, stab.cols);
    std::size_t got = 0;

    gf2::BitMatrix work = stab;
    auto current_rank = [&]() {
        gf2::BitMatrix t(have, stab.cols);
        for (std::size_t r = 0; r < have; r++)
            for (std::size_t w = 0; w < t.words_per_row; w++) t.row(r)[w] = acc.row(r)[w];
        return gf2::rank(t);
    };
    std::size_t base_rank = gf2::rank(stab);
    for (std::size_t r = 0; r < candidates.rows && got < want; r++) {
        for (std::size_t w = 0; w < acc.words_per_row; w++)
            acc.row(have)[w] = candidates.row(r)[w];
        have++;
        const std::size_t nr = current_rank();
        if (nr > base_rank) {
            base_rank = nr;
            for (std::size_t w = 0; w < out.words_per_row; w++)
                out.row(got)[w] = candidates.row(r)[w];
            got++;
        } else {
            have--;
        }
    }
    if (got != want) throw std::runtime_error("logical extraction: rank deficiency");
    return out;
}

std::pair<gf2::BitMatrix, gf2::BitMatrix> logical_operators(const BBCode& code) {
    if (code.k < 1) throw std::invalid_argument("code has no logical qubits");
    const std::size_t k = code.k;

    // Z logicals: ker(H_X) modulo rowspace(H_Z); X logicals mirrored.
    gf2::BitMatrix ker_x = gf2::nullspace_basis(code.h_x);
    gf2::BitMatrix ker_z = gf2::nullspace_basis(code.h_z);
    gf2::BitMatrix lz = pick_independent(ker_x, code.h_z, k);
    gf2::BitMatrix lx = pick_independent(ker_z, code.h_x, k);

    // Gram matrix G[i][j] = <lx_i, lz_j>; make it the identity so row i of
    // each basis pairs with row i of the other.
    gf2::BitMatrix gram = gf2::matmul(lx, gf2::transpose(lz));
    gf2::BitMatrix c = gf2::transpose(gf2::inverse(gram));
    gf2::BitMatrix lz_paired = gf2::matmul(c, lz);
    return {std::move(lx), std::move(lz_paired)};
}

namespace {

struct SideData {
    gf2::BitMatrix codewords;   // basis of ker(checks of opposite type)
    gf2::BitMatrix stab_rref;   // RREF of the same-type stabilizer rows
    std::vector<std::size_t> stab_pivots;
};

int side_min_logical(const SideData& side, std::mt19937_64& rng, int current_best) {
    const std::size_t n = side.codewords.cols;
    std::vector<uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    // RREF of the generator basis under the permuted column order.
    gf2::BitMatrix work = side.codewords;
    std::size_t next_row = 0;
    for (std::size_t ci = 0; ci < n && next_row < work.rows; ci++) {
        const std::size_t c = perm[ci];
        std::size_t pivot = next_row;
        while (pivot < work.rows && !work.get(pivot, c)) pivot++;
        if (pivot == work.rows) continue;
        if (pivot != next_row)
            for (std::size_t w = 0; w < work.words_per_row; w++)
                std::swap(work.row(pivot)[w], work.row(next_row)[w]);
        for (std::size_t r = 0; r < work.rows; r++)
            if (r != next_row && work.get(r, c)) work.xor_row_into(next_row, r);
        next_row++;
    }

    int best = current_best;
    gf2::BitVec v = gf2::make_bitvec(n);
    for (std::size_t r = 0; r < work.rows; r++) {
        const int w = int(work.row_weight(r));
        if (w == 0 || w >= best) continue;
        std::copy(work.row(r), work.row(r) + work.words_per_row, v.begin());
        if (!gf2::in_rowspace_rref(side.stab_rref, side.stab_pivots, v)) best = w;
    }
    return best;
}

}  // namespace

DistanceEstimate estimate_distance(const BBCode& code, int iterations, uint64_t seed) {
    if (iterations < 1) throw std::invalid_argument("iterations >= 1 required");

    SideData z_side, x_side;  // z_side finds Z-type logicals, x_side X-type
    z_side.codewords = gf2::nullspace_basis(code.h_x);
    z_side.stab_rref = code.h_z;
    z_side.stab_pivots = gf2::rref_inplace(z_side.stab_rref);
    x_side.codewords = gf2::nullspace_basis(code.h_z);
    x_side.stab_rref = code.h_x;
    x_side.stab_pivots = gf2::rref_inplace(x_side.stab_rref);

    int best = code.n + 1;
    for (int i = 0; i < iterations; i++) {
        std::mt19937_64 rng(seed + uint64_t(i));
        best = side_min_logical(z_side, rng, best);
        best = side_min_logical(x_side, rng, best);
    }

    DistanceEstimate est;
    est.upper_bound = best;
    est.iterations = iterations;
    est.seed = seed;
    return est;
}

}  // namespace bbqec::code

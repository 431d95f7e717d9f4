#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "bbqec/gf2.hpp"

namespace bbqec::code {

enum class Axis : uint8_t { X, Y };

// One power of x or y in the A/B polynomials. Exponents are stored reduced
// modulo the axis order; the constant term 1 is (Axis::X, 0).
struct MonomialTerm {
    Axis axis = Axis::X;
    int exponent = 0;

    bool operator==(const MonomialTerm&) const = default;
};

struct BBCodeSpec {
    int ell = 0;  // order of x
    int em = 0;   // order of y
    std::array<MonomialTerm, 3> a_terms;
    std::array<MonomialTerm, 3> b_terms;

    // Exponent vector (alpha, beta) of a term as an element of Z_ell x Z_em.
    std::pair<int, int> term_exponents(const MonomialTerm& t) const;
};

// Text form: `ell=12 m=3 A=x9+y1+y2 B=1+x1+x11`
BBCodeSpec parse_spec(const std::string& line);
std::string format_spec(const BBCodeSpec& spec);

struct BBCode {
    BBCodeSpec spec;
    int n = 0;  // 2*ell*m
    int k = 0;
    gf2::BitMatrix h_x;  // ell*m x n, [A | B]
    gf2::BitMatrix h_z;  // ell*m x n, [B^T | A^T]
    gf2::BitMatrix logical_x;  // k rows
    gf2::BitMatrix logical_z;  // k rows, symplectically paired with logical_x

    int group_size() const { return spec.ell * spec.em; }
};

// Builds parity checks and a symplectically paired logical basis.
// Throws std::invalid_argument on degenerate specs (duplicate terms after
// exponent reduction, ell or m < 2).
BBCode build_code(const BBCodeSpec& spec);

// Recompute paired logical bases for a code (already done by build_code).
std::pair<gf2::BitMatrix, gf2::BitMatrix> logical_operators(const BBCode& code);

struct DistanceEstimate {
    int upper_bound = 0;
    int iterations = 0;
    uint64_t seed = 0;
};

// Randomized information-set search over ker(h_x) \ rowspace(h_z) and the
// X<->Z mirror; returns the smallest logical weight seen. Deterministic for
// a fixed seed; iteration i uses seed + i.
DistanceEstimate estimate_distance(const BBCode& code, int iterations, uint64_t seed);

}  // namespace bbqec::code

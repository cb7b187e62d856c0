#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "bk/gf.hpp"

namespace bk {

// A Serre weight for the unramified degree-f extension: the tuple
// (r_0, ..., r_{f-1}; w) standing for (x) Sym^{r_j} twisted by det^w,
// with 0 <= r_j <= p-1 and w taken mod p^f - 1.
struct SerreWeight {
    std::vector<int64_t> r;
    int64_t w = 0;
    friend auto operator<=>(const SerreWeight&, const SerreWeight&) = default;
};

SerreWeight weight_make(int64_t p, std::vector<int64_t> r, int64_t w);

// Irreducible two-dimensional representation of the absolute Galois group
// of the unramified extension of degree f, induced from its quadratic
// unramified extension:  parameters (c, s, theta) with c the exponent of
// the niveau-2f fundamental character, s a cyclotomic twist and theta the
// unramified parameter.  Irreducibility forces c != 0 mod q+1, q = p^f.
struct InducedRep {
    int64_t p = 0;
    int f = 0;
    int64_t c = 0; // mod q^2 - 1, never 0 mod q+1
    int64_t s = 0; // mod q - 1
    Fq theta;
};

InducedRep rep_make(int64_t p, int f, int64_t c, int64_t s, Fq theta);

// Tame inertial type: a pair of distinct niveau-f characters given by their
// exponents (keta, ketap) mod q-1.
struct TameType {
    int64_t p = 0;
    int f = 0;
    int64_t keta = 0;
    int64_t ketap = 0;

    // digits c_i of keta - ketap mod q-1, constant digit first
    std::vector<int64_t> cdigits() const;
    // digits b_i of ketap mod q-1
    std::vector<int64_t> bdigits() const;
    // d_i = p - 1 - c_{f-1-i}, the exponent data the genre matrices use
    std::vector<int64_t> ddigits() const;
};

TameType type_make(int64_t p, int f, int64_t keta, int64_t ketap);

// Base-p digits of n, constant digit first; requires 0 <= n < p^count.
std::vector<int64_t> digits_base_p(int64_t n, int64_t p, int count);

// The set of Serre weights attached to an induced representation, sorted.
// A weight (r'; w') belongs iff for some subset A of {0..f-1}
//   sum_{j in A} (r'_j+1) p^j + q sum_{j not in A} (r'_j+1) p^j + (q+1) w'
// is congruent to c + (q+1) s mod q^2 - 1.
std::vector<SerreWeight> weights_of_rep(const InducedRep& rep);

// The 2-to-4 Serre weights attached to a tame type, f = 2 only.
std::vector<SerreWeight> weights_of_type_f2(const TameType& t);

std::vector<SerreWeight> weights_intersect(const std::vector<SerreWeight>& a,
                                           const std::vector<SerreWeight>& b);

// Hand-tabulated weight lists for the four families with a nongeneric
// parameter, ordered with the modified weight first.  Case ids:
//   1: c = 1 + r0,       1 <= r0 <= p-2      (4 weights)
//   2: c = 1                                  (3 weights, totally nongeneric)
//   3: c = p(2 + r1),    0 <= r1 <= p-3      (4 weights)
//   4: c = p                                  (3 weights, totally nongeneric)
// s twists every weight by det^s.
std::vector<SerreWeight> nongeneric_oracle(int64_t p, int case_id, int64_t param, int64_t s);

} // namespace bk

#pragma once

#include <vector>

#include "bk/phimod.hpp"

namespace bk {

// The scaling action behind engeance equivalence: lambda in k^x rescales
// the parameter at position i by lambda^{e_i} (a-slots) and lambda^{-e_i}
// (a'-slots), e_i = (-1)^{#II positions before i}.  When the II-count is
// odd the action also moves (alpha, alpha') to (alpha/lambda, lambda
// alpha').  canonicalize picks the unique representative with alpha = 1
// (odd count) or first nonzero I-parameter = 1 (even count); an all-I-zero
// engeance with even count has no representative.
Engeance canonicalize(const Engeance& e, const FieldPtr& k);

struct CensusEntry {
    Engeance e;
    ResidualClass cls;
};

// All canonical residually irreducible engeances of the given type whose
// determinant unit is theta.  Genre vectors made of II alone carry no
// normalizable member and are skipped.
std::vector<CensusEntry> enumerate_engeances(const TameType& t, const Fq& theta,
                                             const Context& ctx);

enum class Shape { Empty, Point, ProjLine };

struct ShapeResult {
    Shape shape = Shape::Empty;
    std::vector<CensusEntry> members;
};

// Bucket the census members matching the target class by genre vector and
// recognize the family shape: no member, a single member, or the projective
// line (two one-member genre vectors containing a II factor plus one all-I
// vector with |k| - 1 members).  Anything else raises UnrecognizedShape.
ShapeResult kisin_shape(const std::vector<CensusEntry>& census, const ResidualClass& target,
                        const Context& ctx);

// Normalization constants tying determinant classes to induced characters:
// a class (h, delta) corresponds to the character data (c, s, theta) with
// h = kw - (c + (q+1) s) mod q^2-1 and delta = theta^{-1} uw.
struct Calibration {
    int64_t kw = 0;
    int32_t uw = 1;
};

// Computes the constants and self-checks them against a pinned instance;
// raises CalibrationFailed on disagreement.
Calibration calibrate(const Context& ctx);

ResidualClass class_of_rep(const InducedRep& rep, const Calibration& cal);

// Where an induced character sits relative to the four non-generic case
// families; case_id 0 means generic.  For a matched case, param is r0
// (case 1), r1 (case 3) and 0 otherwise, s the twist, and modified the
// distinguished first weight of the case list.
struct NongenericInfo {
    int case_id = 0;
    int64_t param = 0;
    int64_t s = 0;
    bool totally_nongeneric = false;
    SerreWeight modified{{}, 0};
};

NongenericInfo identify_nongeneric(const InducedRep& rep);

} // namespace bk

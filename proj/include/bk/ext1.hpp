#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bk/engeance.hpp"

namespace bk {

// A class in the extension group of an irreducible residual phi-module by
// itself, written in the coordinates attached to a fixed companion form
// (0, delta v^h; 1, 0).  The group splits into two quotients of k((v)); a
// class is recorded as the finitely many nonzero coefficients of its
// canonical representative in each, keyed by exponent.
//
// Basis of the first coordinate:  v^n with n < -h/(q+1) and
// n mod q^2 != (q-1)h mod q^2.  Basis of the second:  v^n with n < 0 and
// n mod q^2 != 0, together with v^0.
struct Ext1Class {
    std::map<int64_t, int32_t> first;
    std::map<int64_t, int32_t> second;

    static Ext1Class zero() { return {}; }
    bool operator==(const Ext1Class&) const = default;
};

// Reduce a Laurent series to its canonical representative in the quotient
// k((v)) / (v^m phi^{2f} - 1), where phi^{2f} acts on v as v |-> v^{q^2}.
// Exponents e with e (q^2 - 1) > -m die in the quotient; exponents
// congruent to m mod q^2 rewrite as v^{m + q^2 n} |-> v^n until they either
// die or land in the basis.  The fixed exponent with e (q^2 - 1) = -m is
// kept (for m = 0 this is the constant term).
//
// Requires every coefficient at exponents up to floor(-m / (q^2 - 1)) to be
// known; throws PrecisionExhausted otherwise.
std::map<int64_t, int32_t> quotient_reduce(const Series& x, int64_t m, int64_t q);

// Coordinates of the extension class of a tangent matrix A over the
// companion body (0, delta v^h; 1, 0):
//   first  <- (1 / (delta v^h)) (phi(a) + d),  reduced with m = (q-1) h,
//   second <- (1 / (delta v^h)) b + phi(c),    reduced with m = 0,
// where phi = phi_sub(., f) is the semilinear Frobenius of the ambient
// module.  Linear in A.
Ext1Class ext_coords(const Mat2& A, int64_t h, int32_t delta, const Context& ctx);

// Companion-reduce each dual matrix and take coordinates of its tangent.
// All bodies must reduce to one and the same companion form; a mismatch in
// the literal (h, delta) across the family throws InconsistentSystem.
// Reducible or non-convergent bodies propagate the companion machinery's
// errors.
std::vector<Ext1Class> tangent_images(const std::vector<DualMat2>& family, const Context& ctx);

// The tangent directions of a one-member fibre: one dual matrix per free
// parameter slot of the engeance (a for I_eta, a' for I_eta', both for II).
std::vector<DualMat2> point_directions(const TameType& t, const Engeance& e, const Context& ctx);

// Rank of the span of the given classes, by Gaussian elimination over k on
// their joint support.
int ext_rank(const std::vector<Ext1Class>& classes, const FieldPtr& k);

// Whether the classes are linearly independent over k.
bool independent(const std::vector<Ext1Class>& classes, const FieldPtr& k);

// Isomorphism label for the flat deformation ring attached to a residual
// representation and a tame type.  XYplusPk stands for
// O[[X, Y, T_1..T_extra_vars]] / (XY + p^pexp); StrictSubring marks the one
// untreated configuration, where the ring is known only as a proper subring
// of an XY + p presentation.
struct PresentedRing {
    enum class Kind { Zero, XYplusPk, StrictSubring };
    Kind kind = Kind::Zero;
    int pexp = 0;
    int extra_vars = 0;

    bool operator==(const PresentedRing&) const = default;
};

// The ring label predicted from the weight combinatorics alone:
//   no common weight                      -> Zero
//   common weights contain the modified
//   weight of a nongeneric target         -> XY + p^2, one extra variable
//   totally nongeneric target otherwise   -> StrictSubring
//   otherwise                             -> XY + p, one extra variable
PresentedRing theorem_ring(const InducedRep& target, const TameType& t);

// The ring label computed from the shape of the census fibre over the
// target's residual class:  Empty -> Zero, ProjLine -> XY + p^2, Point ->
// XY + p (or StrictSubring for a totally nongeneric target).  With confirm
// set, a Point fibre is double-checked by transporting the engeance's
// parameter directions to extension classes: their rank must be 3, or 2 in
// the totally nongeneric case, and the label must agree with theorem_ring;
// any mismatch throws InconsistentSystem.
PresentedRing deformation_ring(const InducedRep& target, const TameType& t, const Context& ctx,
                               const Calibration& cal, bool confirm = false);

// Same label against a census already enumerated for (t, target.theta);
// callers sweeping many targets over one type reuse the expensive part.
PresentedRing deformation_ring(const InducedRep& target, const TameType& t,
                               const std::vector<CensusEntry>& census, const Context& ctx,
                               const Calibration& cal, bool confirm = false);

// Multiplicity of the special fibre of the ring, read off from the stable
// finite difference of the Hilbert function of
// k[X, Y, T_1..T_e] / (XY) in total degree.  Zero rings have multiplicity
// 0; StrictSubring has no determined presentation and throws
// std::invalid_argument.
int64_t hs_multiplicity(const PresentedRing& ring);

// One tame type's contribution to the multiplicity bookkeeping of a target:
// the common weights, the computed ring label, its multiplicity (-1 when
// the label leaves it undetermined), and whether multiplicity and weight
// count agree.
struct BMTypeLine {
    TameType t;
    std::vector<SerreWeight> common;
    PresentedRing ring;
    int64_t mu = 0;
    bool undetermined = false;
    bool consistent = false;
};

// Full multiplicity audit of one target against every tame type:  each
// consistent determined line certifies its common weights; weights of the
// target never so certified are reported as uncovered.
struct BMReport {
    InducedRep target;
    NongenericInfo ng;
    std::vector<SerreWeight> weights;
    std::vector<SerreWeight> certified;
    std::vector<SerreWeight> uncovered;
    std::vector<BMTypeLine> lines;
    int64_t types_total = 0;
    int64_t types_zero = 0;
    bool all_consistent = false;
};

// Audit several targets in one sweep over the unordered pairs of tame
// characters, sharing one census per type.  All targets must live at the
// context's (p, f) and carry the same unramified twist.
std::vector<BMReport> bm_check_all(const std::vector<InducedRep>& targets, const Context& ctx,
                                   const Calibration& cal);

BMReport bm_check(const InducedRep& target, const Context& ctx, const Calibration& cal);

}  // namespace bk

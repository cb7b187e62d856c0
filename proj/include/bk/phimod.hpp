#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bk/laurent.hpp"
#include "bk/weights.hpp"

namespace bk {

// Ambient data shared by the phi-module computations: the coefficient
// field k, the degree f (so q = p^f), and the default precision window.
struct Context {
    FieldPtr k;
    int f = 2;
    int64_t q = 0;
    int64_t window = 0;

    static Context make(FieldPtr k, int f, int64_t window_mult = 1);
    int64_t p() const { return k->p(); }
};

struct Mat2 {
    Series a, b, c, d;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 phi_sub(const Mat2& m, int64_t i);
Series mat_det(const Mat2& m);

struct DualMat2 {
    Dual a, b, c, d;
    static DualMat2 from(const Mat2& m);
    Mat2 body() const;
    Mat2 tangent() const;
};

DualMat2 mat_mul(const DualMat2& x, const DualMat2& y);
DualMat2 phi_sub(const DualMat2& m, int64_t i);

// Genre of one factor of the partial-Frobenius product.
enum class Genre { IEta, IEtaP, II };

// An engeance: a genre vector with one parameter per I-position (a_i for
// I_eta, a'_i for I_eta'), two per II-position (both zero at the residual
// level), and the diagonal pair (alpha, alpha') applied to the last factor.
struct Engeance {
    std::vector<Genre> genres;
    std::vector<int32_t> a;  // parameter slots, packed elements of k
    std::vector<int32_t> ap;
    int32_t alpha = 1;
    int32_t alphaP = 1;

    int ii_count() const;
};

// The residual matrix of one factor:
//   I_eta : [[v^{d+1}, 0], [a v^d, v^{p-1}]] * v^{-btw}
//   I_eta': [[v^d, a' v^p], [0, v^p]]        * v^{-btw}
//   II    : [[a v^d, v^p], [v^d, a' v^{p-1}]] * v^{-btw}
// All genres share the determinant valuation d + p - 2*btw.
Mat2 genre_matrix(Genre g, int64_t d, int64_t btw, int32_t a, int32_t ap, const FieldPtr& k);

// The factors B^{(0)}, ..., B^{(f-1)} for a type and an engeance; the last
// one is left-multiplied by diag(alpha, alpha').
std::vector<Mat2> genre_matrices(const TameType& t, const Engeance& e, const FieldPtr& k);

// Same factors with the parameter in slot (pos, which) moved first order:
// its value becomes (stored value) + eps.  which: 0 = a, 1 = a'.
std::vector<DualMat2> genre_matrices_dual(const TameType& t, const Engeance& e, int pos,
                                          int which, const FieldPtr& k);

// B = B^{(f-1)} . phi(B^{(f-2)}) ... phi^{f-1}(B^{(0)}), phi = (v -> v^p).
Mat2 product_frobenius(const std::vector<Mat2>& mats);
DualMat2 product_frobenius(const std::vector<DualMat2>& mats);

// T = phi(a) + d phi(c)/c and Delta = (phi(c)/c)(ad - bc), phi = (v -> v^q),
// with phi(c)/c read as 0 when c = 0.
std::pair<Series, Series> twisted_invariants(const Mat2& B, const Context& ctx);

// Isomorphism class of an irreducible etale phi-module of rank 2:
// determinant data (h mod q^2-1, delta) with Delta = -delta v^h + higher
// order.  Classes agree up to replacing h by q h.
struct ResidualClass {
    int64_t h = 0;
    int32_t delta = 1;
};

ResidualClass class_canonical(ResidualClass cls, int64_t q);
bool class_equal(const ResidualClass& x, const ResidualClass& y, int64_t q);

// Decide irreducibility and extract the class, without series inversion:
// val Delta = (q-1) val c + val det and lead Delta = lead det exactly, and
// val T is probed coefficient by coefficient only up to the irreducibility
// threshold (q+1) val T > q val Delta.  Returns nullopt for reducible.
std::optional<ResidualClass> residual_class(const Mat2& B, const Context& ctx);

// Companion normal form  P^{-1} B phi(P) = [[0, delta v^h], [1, 0]].
struct CompanionResult {
    int64_t h = 0;
    int32_t delta = 1;
    Mat2 P;
    bool have_transform = false;
};

// want_transform controls whether P is accumulated; the fast path without
// it truncates intermediates to the working window and is what bulk
// (h, delta) checks use.  Inputs must be residually irreducible.
CompanionResult companion_reduce(const Mat2& B, const Context& ctx, bool want_transform = true);

// Dual version: reduce the body, then transport the tangent through the
// body's base change.  Returns the companion data and the tangent matrix A
// with P^{-1} (body + eps A0) phi(P) = companion + eps A.
std::pair<CompanionResult, Mat2> companion_reduce_dual(const DualMat2& B, const Context& ctx);

// The all-I genre patterns whose digit constraints force reducibility for
// every choice of parameters.
bool mauvais_genre(const std::vector<Genre>& genres, const TameType& t);

} // namespace bk

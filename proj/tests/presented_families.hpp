#pragma once

// Hand-checked dual-number deformation families over companion bodies,
// with the extension classes their tangent directions must map to.  Shared
// between the unit tests and the acceptance battery.
//
// Each family consists of a companion body (0, delta v^h; 1, 0) and three
// tangent directions, one per free parameter of the presented deformation.
// The expected classes are single monomials in the first coordinate of the
// extension group; for the first family at d1 = p - 1 the last two classes
// land on the same exponent with coefficients theta and 1, so the family
// spans only a plane.

#include <cstdint>
#include <vector>

#include "bk/ext1.hpp"

namespace bkfix {

struct PresentedFamily {
    std::vector<bk::DualMat2> duals;
    int64_t h = 0;
    int32_t delta = 1;
    std::vector<bk::Ext1Class> expected;
};

inline bk::DualMat2 with_tangent(const bk::Mat2& body, const bk::Mat2& tan) {
    return {{body.a, tan.a}, {body.b, tan.b}, {body.c, tan.c}, {body.d, tan.d}};
}

inline bk::Ext1Class first_monomial(int64_t e, int32_t c) {
    bk::Ext1Class x;
    x.first[e] = c;
    return x;
}

// Body exponent h = p^4 + p + p^2 (d1 + 1), d1 in [1, p-1].
inline PresentedFamily make_point_family_one(int64_t p, int64_t d1, int32_t theta,
                                             const bk::FieldPtr& k) {
    using bk::Mat2;
    using bk::Series;
    const int64_t p2 = p * p, p4 = p2 * p2;
    const int64_t h = p4 + p + p2 * (d1 + 1);
    const int32_t delta = k->inv(theta);
    const Series z = Series::zero(k);
    const Mat2 body{z, Series::monomial(k, delta, h), Series::one(k), z};
    PresentedFamily F;
    F.h = h;
    F.delta = delta;
    F.duals = {
        with_tangent(body, {Series::monomial(k, 1, p2), z, z, z}),
        with_tangent(body, {Series::monomial(k, 1, p2 + d1), z, z, z}),
        with_tangent(body, {z, z, z, Series::monomial(k, delta, p + p4 - 1 + (p2 - 1) * d1)}),
    };
    F.expected = {
        first_monomial(-p - p2 * (d1 + 1), theta),
        first_monomial(-p - p2, theta),
        first_monomial(-p2 - d1 - 1, 1),
    };
    return F;
}

// Body exponent h = p^3 + p^2 + d1, d1 in [2, p-1].  The first direction's
// raw exponent hits the excluded residue and must be rewritten once.
inline PresentedFamily make_point_family_two(int64_t p, int64_t d1, int32_t theta,
                                             const bk::FieldPtr& k) {
    using bk::Mat2;
    using bk::Series;
    const int64_t p2 = p * p, p3 = p2 * p;
    const int64_t h = p3 + p2 + d1;
    const int32_t delta = k->inv(theta);
    const Series z = Series::zero(k);
    const Mat2 body{z, Series::monomial(k, delta, h), Series::one(k), z};
    PresentedFamily F;
    F.h = h;
    F.delta = delta;
    F.duals = {
        with_tangent(body, {Series::monomial(k, 1, d1), z, z, z}),
        with_tangent(body, {z, z, z, Series::monomial(k, delta, (p + 1) * (p2 - 1) + 1)}),
        with_tangent(body, {Series::monomial(k, 1, p), z, z, z}),
    };
    F.expected = {
        first_monomial(-1 - p, theta),
        first_monomial(-d1 - p, 1),
        first_monomial(-d1 - p2, theta),
    };
    return F;
}

// Body exponent h = p^3 + p^2 + d1 + 2, d1 in [1, p-2].  All three
// directions sit in the lower-right corner.
inline PresentedFamily make_line_family(int64_t p, int64_t d1, int32_t theta,
                                        const bk::FieldPtr& k) {
    using bk::Mat2;
    using bk::Series;
    const int64_t p2 = p * p, p3 = p2 * p;
    const int64_t h = p3 + p2 + d1 + 2;
    const int32_t delta = k->inv(theta);
    const Series z = Series::zero(k);
    const Mat2 body{z, Series::monomial(k, delta, h), Series::one(k), z};
    PresentedFamily F;
    F.h = h;
    F.delta = delta;
    F.duals = {
        with_tangent(body, {z, z, z, Series::monomial(k, 1, p3 + p2 - p)}),
        with_tangent(body, {z, z, z, Series::monomial(k, 1, p3 + p2 - p + d1)}),
        with_tangent(body, {z, z, z, Series::monomial(k, 1, p3 + p2 - p + d1 + 1)}),
    };
    F.expected = {
        first_monomial(-p - d1 - 2, theta),
        first_monomial(-p - 2, theta),
        first_monomial(-p - 1, theta),
    };
    return F;
}

}  // namespace bkfix

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bk/laurent.hpp"

using namespace bk;

namespace {

Series rnd_poly(const FieldPtr& F, std::mt19937& rng, int64_t lo, int64_t hi, int terms) {
    std::uniform_int_distribution<int64_t> de(lo, hi);
    std::uniform_int_distribution<int32_t> dc(0, static_cast<int32_t>(F->q() - 1));
    Series s = Series::zero(F);
    for (int i = 0; i < terms; ++i)
        s = s + Series::monomial(F, dc(rng), de(rng));
    return s;
}

} // namespace

TEST_CASE("construction and normalization") {
    auto F = field_make(5, 2);
    Series s = Series::make(F, -2, {0, 0, 3, 0, 1, 0});
    CHECK(s.val() == 0);
    CHECK(s.window_end() == 3);
    CHECK(s.coeff(0) == 3);
    CHECK(s.coeff(1) == 0);
    CHECK(s.coeff(2) == 1);
    CHECK(s.coeff(-100) == 0);
    CHECK(s.exact());

    Series t = Series::make(F, 0, {1, 2, 3}, 2); // coefficient at v^2 beyond prec
    CHECK(t.window_end() == 2);
    CHECK(t.prec() == 2);
    CHECK_THROWS_AS(t.coeff(2), PrecisionExhausted);
}

TEST_CASE("zero handling") {
    auto F = field_make(5, 2);
    Series z = Series::zero(F);
    CHECK(z.exact_zero());
    CHECK_THROWS_AS(z.val(), std::domain_error);

    Series oz = Series::zero_to(F, 3);
    CHECK(oz.known_zero());
    CHECK_FALSE(oz.exact_zero());
    CHECK_THROWS_AS(oz.val(), PrecisionExhausted);
    CHECK(oz.coeff(2) == 0);
    CHECK_THROWS_AS(oz.coeff(3), PrecisionExhausted);
}

TEST_CASE("addition tracks the weaker precision") {
    auto F = field_make(5, 2);
    Series a = Series::make(F, -1, {1, 1}, 3);           // v^-1 + 1 + O(v^3)
    Series b = Series::monomial(F, 4, -1) + Series::monomial(F, 1, 5);
    Series s = a + b;
    CHECK(s.prec() == 3);
    CHECK(s.val() == 0);
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(2) == 0);
    CHECK_THROWS_AS(s.coeff(5), PrecisionExhausted); // the v^5 term fell beyond prec

    Series cancel = a - a;
    CHECK(cancel.known_zero());
    CHECK(cancel.prec() == 3);
}

TEST_CASE("multiplication precision") {
    auto F = field_make(5, 2);
    Series a = Series::make(F, 1, {1}, 4);  // v + O(v^4)
    Series b = Series::make(F, -2, {1}, 0); // v^-2 + O(v^0)
    Series c = a * b;
    CHECK(c.val() == -1);
    CHECK(c.prec() == 1); // min(4 + (-2), 0 + 1)

    Series one = Series::one(F);
    Series g = Series::make(F, 0, {1, 1});
    Series h = Series::make(F, 0, {1, 4});
    Series prod = g * h; // (1+v)(1-v) = 1 - v^2
    CHECK(prod.exact());
    CHECK(prod == Series::make(F, 0, {1, 0, 4}));
    CHECK((one * g) == g);

    // exact zero absorbs regardless of the other factor's precision
    CHECK((Series::zero(F) * a).exact_zero());
}

TEST_CASE("division and inverse") {
    auto F = field_make(5, 2);
    Series one = Series::one(F);
    Series g = Series::make(F, 0, {1, 4}); // 1 - v
    Series inv = series_inv(g, 5);
    CHECK(inv.prec() == 5);
    for (int64_t e = 0; e < 5; ++e) CHECK(inv.coeff(e) == 1); // geometric series

    Series q = series_div(Series::make(F, 2, {1, 1}), Series::monomial(F, 1, 1), 10);
    CHECK(q.val() == 1);
    CHECK(q.coeff(1) == 1);
    CHECK(q.coeff(2) == 1);
    CHECK(q.prec() == 11);

    Series bi = series_inv(Series::make(F, 0, {1, 0, 1}), 7); // 1/(1+v^2)
    CHECK(bi.coeff(0) == 1);
    CHECK(bi.coeff(2) == 4);
    CHECK(bi.coeff(4) == 1);
    CHECK(bi.coeff(6) == 4);
    CHECK(bi.coeff(5) == 0);

    CHECK_THROWS_AS(series_div(one, Series::zero(F), 4), DivisionByZero);
    CHECK_THROWS_AS(series_div(one, Series::zero_to(F, 3), 4), PrecisionExhausted);

    // x == (x/b)*b on the quotient's window
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        Series x = rnd_poly(F, rng, -3, 3, 3);
        Series b = rnd_poly(F, rng, -2, 2, 2);
        if (b.known_zero() || x.known_zero()) continue;
        Series qq = series_div(x, b, 24);
        Series back = qq * b;
        for (int64_t e = x.val(); e < back.prec(); ++e)
            CHECK(back.coeff(e) == x.coeff(e));
    }
}

TEST_CASE("phi_sub scales exponents only") {
    auto F = field_make(5, 2);
    Series x = Series::make(F, -1, {2, 0, 3}); // 2v^-1 + 3v
    Series y = phi_sub(x, 1);
    CHECK(y == Series::make(F, -5, {2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3}));
    CHECK(phi_sub(x, 0) == x);

    Series t = Series::make(F, 1, {1}, 2); // v + O(v^2)
    CHECK(phi_sub(t, 1).prec() == 10);
    CHECK(phi_sub(t, 1).val() == 5);

    // multiplicative on exact polynomials
    Series a = Series::make(F, 0, {1, 2});
    Series b = Series::make(F, -2, {3, 0, 1});
    CHECK(phi_sub(a * b, 2) == phi_sub(a, 2) * phi_sub(b, 2));
}

TEST_CASE("dual numbers") {
    auto F = field_make(5, 2);
    Series one = Series::one(F);
    Series v = Series::monomial(F, 1, 1);
    Dual a{one, v};      // 1 + eps v
    Dual b{one, -v};     // 1 - eps v
    Dual ab = a * b;
    CHECK(ab.body == one);
    CHECK(ab.tan.known_zero());

    Dual d{v, one};
    Dual q = dual_div(d * a, a, 8);
    CHECK(q.body.coeff(1) == 1);
    for (int64_t e = -2; e < q.tan.prec(); ++e)
        CHECK(q.tan.coeff(e) == (e == 0 ? 1 : 0));

    Dual pf = phi_sub(d, 1);
    CHECK(pf.body.val() == 5);
    CHECK(pf.tan.coeff(0) == 1);
}

TEST_CASE("scaled monomial multiply") {
    auto F = field_make(5, 2);
    Series x = Series::make(F, 0, {1, 2}, 4);
    Series y = x.scaled(3, -2);
    CHECK(y.val() == -2);
    CHECK(y.coeff(-2) == 3);
    CHECK(y.coeff(-1) == F->mul(3, 2));
    CHECK(y.prec() == 2);
    CHECK(x.scaled(0).exact_zero());
}

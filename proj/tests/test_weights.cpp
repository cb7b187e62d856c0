#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "bk/weights.hpp"

using namespace bk;

namespace {

Fq theta5() { return Fq{field_make(5, 2), field_make(5, 2)->generator()}; }

std::vector<SerreWeight> sorted(std::vector<SerreWeight> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("base-p digits") {
    CHECK(digits_base_p(19, 5, 2) == std::vector<int64_t>{4, 3});
    CHECK(digits_base_p(0, 5, 2) == std::vector<int64_t>{0, 0});
    CHECK(digits_base_p(23, 5, 2) == std::vector<int64_t>{3, 4});
    CHECK_THROWS_AS(digits_base_p(25, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(digits_base_p(-1, 5, 2), std::invalid_argument);
}

TEST_CASE("tame type digit data") {
    TameType t = type_make(5, 2, 2, -5); // eta = omega^2, eta' = omega^{-5}
    CHECK(t.keta == 2);
    CHECK(t.ketap == 19);
    CHECK(t.cdigits() == std::vector<int64_t>{2, 1}); // 2 - 19 = -17 = 7 mod 24
    CHECK(t.bdigits() == std::vector<int64_t>{4, 3});
    CHECK(t.ddigits() == std::vector<int64_t>{3, 2}); // (p-1-c1, p-1-c0)

    TameType blue = type_make(5, 2, 1 + 2 - 5, -1); // c digits (1+r0, p-1), r0 = 2
    CHECK(blue.cdigits() == std::vector<int64_t>{3, 4});
    CHECK(blue.ddigits() == std::vector<int64_t>{0, 1});

    CHECK_THROWS_AS(type_make(5, 2, 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(type_make(5, 2, 3, 3 + 24), std::invalid_argument);
}

TEST_CASE("weights of totally nongeneric representations") {
    auto w2 = weights_of_rep(rep_make(5, 2, 1, 0, theta5()));
    CHECK(w2 == sorted({weight_make(5, {1, 4}, -1), weight_make(5, {3, 0}, -4),
                        weight_make(5, {4, 3}, 0)}));

    auto w4 = weights_of_rep(rep_make(5, 2, 5, 0, theta5()));
    CHECK(w4 == sorted({weight_make(5, {4, 1}, -5), weight_make(5, {0, 3}, 4),
                        weight_make(5, {3, 4}, 0)}));
}

TEST_CASE("weights match the tabulated nongeneric lists") {
    for (int64_t p : {5, 7}) {
        Fq th{field_make(p, 2), field_make(p, 2)->generator()};
        for (int64_t r0 = 1; r0 <= p - 2; ++r0) {
            auto lhs = weights_of_rep(rep_make(p, 2, 1 + r0, 3, th));
            CHECK(lhs == sorted(nongeneric_oracle(p, 1, r0, 3)));
        }
        for (int64_t r1 = 0; r1 <= p - 3; ++r1) {
            auto lhs = weights_of_rep(rep_make(p, 2, p * (2 + r1), 1, th));
            CHECK(lhs == sorted(nongeneric_oracle(p, 3, r1, 1)));
        }
    }
}

TEST_CASE("weight set invariances") {
    auto th = theta5();
    const int64_t q = 25;
    InducedRep rep = rep_make(5, 2, 12, 0, th); // generic: r0 = 1, r1 = 1
    auto base = weights_of_rep(rep);
    CHECK(base.size() == 4);

    // conjugate exponent q*c names the same representation
    auto conj = weights_of_rep(rep_make(5, 2, 12 * q, 0, th));
    CHECK(conj == base);

    // twisting by s shifts every determinant exponent
    auto tw = weights_of_rep(rep_make(5, 2, 12, 1, th));
    std::vector<SerreWeight> shifted;
    for (auto wt : base) shifted.push_back(weight_make(5, wt.r, wt.w + 1));
    CHECK(tw == sorted(shifted));
}

TEST_CASE("type weight candidates") {
    // c digits (4, 0): both middle candidates drop
    TameType t = type_make(5, 2, 4, 0);
    auto w = weights_of_type_f2(t);
    CHECK(w == sorted({weight_make(5, {4, 0}, 0), weight_make(5, {3, 3}, 5),
                       weight_make(5, {0, 4}, 4)}));

    // swapping the two characters names the same type
    for (int64_t keta : {7, 11, 23}) {
        TameType a = type_make(5, 2, keta, 3);
        TameType b = type_make(5, 2, 3, keta);
        CHECK(weights_of_type_f2(a) == weights_of_type_f2(b));
        auto n = weights_of_type_f2(a).size();
        CHECK(n >= 2);
        CHECK(n <= 4);
    }
}

TEST_CASE("common weights of a figure row") {
    // eta = omega^{r0}, eta' = omega^{-p} against the c = 1 + r0 family
    const int64_t p = 5, r0 = 2;
    auto rep = rep_make(p, 2, 1 + r0, 0, theta5());
    auto t = type_make(p, 2, r0, -p);
    auto common = weights_intersect(weights_of_rep(rep), weights_of_type_f2(t));
    CHECK(common == sorted({weight_make(p, {p - 2 - r0, 0}, 1 + r0 - p),
                            weight_make(p, {p - 1 - r0, p - 2}, r0)}));
}

TEST_CASE("validation errors") {
    auto th = theta5();
    CHECK_THROWS_AS(rep_make(5, 2, 26, 0, th), std::invalid_argument);  // 26 = q+1
    CHECK_THROWS_AS(rep_make(5, 2, 0, 0, th), std::invalid_argument);
    CHECK_THROWS_AS(rep_make(5, 2, 3, 0, Fq{field_make(5, 2), 0}), std::invalid_argument);
    CHECK_THROWS_AS(rep_make(5, 2, 3, 0, Fq{field_make(7, 2), 1}), FieldMismatch);
    CHECK_THROWS_AS(weight_make(5, {5, 0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(nongeneric_oracle(5, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(nongeneric_oracle(5, 5, 0, 0), std::invalid_argument);
}

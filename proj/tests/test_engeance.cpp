#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bk/engeance.hpp"

using namespace bk;

namespace {

struct Setup {
    FieldPtr k = field_make(5, 2);
    Context ctx = Context::make(k, 2);
    int32_t g = k->generator();
    int32_t thinv = k->inv(k->generator());
    Fq theta{k, k->generator()};
};

bool eng_eq(const Engeance& x, const Engeance& y) {
    return x.genres == y.genres && x.a == y.a && x.ap == y.ap && x.alpha == y.alpha
           && x.alphaP == y.alphaP;
}

} // namespace

TEST_CASE("canonicalize: even II-count rescales the first parameter to one") {
    Setup S;
    const int32_t x = S.g;
    const int32_t y = S.k->mul(S.g, S.g);

    Engeance e;
    e.genres = {Genre::IEtaP, Genre::IEta};
    e.a = {0, y};
    e.ap = {x, 0};
    e.alpha = 2;
    e.alphaP = 3;

    const Engeance c = canonicalize(e, S.k);
    CHECK(c.ap[0] == S.k->one());
    CHECK(c.a[1] == S.k->mul(x, y));
    CHECK(c.alpha == e.alpha);
    CHECK(c.alphaP == e.alphaP);
    CHECK(eng_eq(canonicalize(c, S.k), c));

    Engeance e2 = e;
    e2.ap = {0, 0};
    const Engeance c2 = canonicalize(e2, S.k);
    CHECK(c2.a[1] == S.k->one());
    CHECK(c2.ap == std::vector<int32_t>{0, 0});

    Engeance z = e;
    z.a = {0, 0};
    z.ap = {0, 0};
    CHECK_THROWS_AS(canonicalize(z, S.k), NotNormalizable);

    Engeance ii;
    ii.genres = {Genre::II, Genre::II};
    ii.a = {S.g, 0};
    ii.ap = {0, 2};
    CHECK_THROWS_AS(canonicalize(ii, S.k), NotNormalizable);
}

TEST_CASE("canonicalize: odd II-count moves alpha to one and fixes alpha alphaP") {
    Setup S;
    Engeance e;
    e.genres = {Genre::IEta, Genre::II};
    e.a = {2, 0};
    e.ap = {0, 0};
    e.alpha = S.g;
    e.alphaP = 3;

    const Engeance c = canonicalize(e, S.k);
    CHECK(c.alpha == S.k->one());
    CHECK(c.alphaP == S.k->mul(S.g, 3));
    CHECK(c.a[0] == S.k->mul(S.g, 2));
    CHECK(eng_eq(canonicalize(c, S.k), c));

    Engeance bad = e;
    bad.alpha = 0;
    CHECK_THROWS_AS(canonicalize(bad, S.k), std::invalid_argument);
}

TEST_CASE("canonicalize preserves the residual class of the product") {
    Setup S;
    const TameType t = type_make(5, 2, -2, -1);
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> genre_pick(0, 2);
    std::uniform_int_distribution<int32_t> elt(0, 24);
    std::uniform_int_distribution<int32_t> unit(1, 24);

    int normalizable = 0;
    for (int trial = 0; trial < 150; ++trial) {
        Engeance e;
        e.genres.resize(2);
        do {
            for (auto& g : e.genres) {
                switch (genre_pick(rng)) {
                    case 0: g = Genre::IEta; break;
                    case 1: g = Genre::IEtaP; break;
                    default: g = Genre::II; break;
                }
            }
        } while (e.genres[0] == Genre::II && e.genres[1] == Genre::II);
        e.a = {elt(rng), elt(rng)};
        e.ap = {elt(rng), elt(rng)};
        e.alpha = unit(rng);
        e.alphaP = unit(rng);

        Engeance c;
        try {
            c = canonicalize(e, S.k);
        } catch (const NotNormalizable&) {
            continue;
        }
        ++normalizable;

        const auto cls_e = residual_class(product_frobenius(genre_matrices(t, e, S.k)), S.ctx);
        const auto cls_c = residual_class(product_frobenius(genre_matrices(t, c, S.k)), S.ctx);
        REQUIRE(cls_e.has_value() == cls_c.has_value());
        if (cls_e) {
            CHECK(class_equal(*cls_e, *cls_c, S.ctx.q));
            CHECK(cls_e->delta == cls_c->delta);
        }
    }
    CHECK(normalizable > 100);
}

TEST_CASE("canonicalize collapses whole scaling orbits of irreducible engeances") {
    Setup S;
    const ResidualClass target{81, S.thinv};

    // even II-count: the scaling fixes (alpha, alpha') and moves parameters
    // by lambda^{+1} and lambda^{-1}
    const TameType line = type_make(5, 2, -2, -1);
    int checked_even = 0;
    for (int32_t al = 1; al < 25; ++al) {
        Engeance can;
        can.genres = {Genre::IEtaP, Genre::IEta};
        can.a = {0, S.k->mul(S.g, S.k->mul(al, al))};
        can.ap = {S.k->one(), 0};
        can.alpha = al;
        can.alphaP = S.k->neg(S.k->mul(S.thinv, S.k->inv(al)));
        for (int32_t lam = 1; lam < 25; ++lam) {
            Engeance e = can;
            e.ap[0] = S.k->inv(lam);
            e.a[1] = S.k->mul(lam, can.a[1]);
            CHECK(eng_eq(canonicalize(e, S.k), can));
            const auto cls = residual_class(product_frobenius(genre_matrices(line, e, S.k)), S.ctx);
            REQUIRE(cls.has_value());
            CHECK(class_equal(*cls, target, S.ctx.q));
            ++checked_even;
        }
    }
    CHECK(checked_even == 576);

    // odd II-count: the scaling moves (alpha, alpha') to (alpha/lambda,
    // lambda alpha') and the canonical member has alpha = 1
    const TameType point = type_make(5, 2, 2, -5);
    Engeance pcan;
    pcan.genres = {Genre::IEta, Genre::II};
    pcan.a = {0, 0};
    pcan.ap = {0, 0};
    pcan.alpha = S.k->one();
    pcan.alphaP = S.thinv;
    for (int32_t lam = 1; lam < 25; ++lam) {
        Engeance e = pcan;
        e.alpha = S.k->inv(lam);
        e.alphaP = S.k->mul(lam, S.thinv);
        CHECK(eng_eq(canonicalize(e, S.k), pcan));
        const auto cls = residual_class(product_frobenius(genre_matrices(point, e, S.k)), S.ctx);
        REQUIRE(cls.has_value());
        CHECK(class_equal(*cls, target, S.ctx.q));
    }
}

TEST_CASE("census of the point type finds exactly one engeance in the target class") {
    Setup S;
    const TameType t = type_make(5, 2, 2, -5);
    const auto census = enumerate_engeances(t, S.theta, S.ctx);
    REQUIRE(!census.empty());
    for (const auto& ent : census) CHECK(ent.cls.delta == S.thinv);

    const ResidualClass target{81, S.thinv};
    const ShapeResult res = kisin_shape(census, target, S.ctx);
    REQUIRE(res.shape == Shape::Point);
    const Engeance& e = res.members.front().e;
    CHECK(e.genres == std::vector<Genre>{Genre::IEta, Genre::II});
    CHECK(e.a == std::vector<int32_t>{0, 0});
    CHECK(e.ap == std::vector<int32_t>{0, 0});
    CHECK(e.alpha == S.k->one());
    CHECK(e.alphaP == S.thinv);

    const ShapeResult none = kisin_shape(census, ResidualClass{81, S.k->one()}, S.ctx);
    CHECK(none.shape == Shape::Empty);
    CHECK(none.members.empty());
}

TEST_CASE("census of the line type finds a projective line of engeances") {
    Setup S;
    const TameType t = type_make(5, 2, -2, -1);
    const auto census = enumerate_engeances(t, S.theta, S.ctx);

    const ResidualClass target{81, S.thinv};
    const ShapeResult res = kisin_shape(census, target, S.ctx);
    REQUIRE(res.shape == Shape::ProjLine);
    CHECK(res.members.size() == 26);

    int all_i = 0;
    int with_ii = 0;
    bool frozen_found = false;
    const std::vector<Genre> all_i_genres{Genre::IEtaP, Genre::IEta};
    for (const auto& ent : res.members) {
        const Engeance& e = ent.e;
        CHECK(ent.cls.delta == S.thinv);
        CHECK(eng_eq(canonicalize(e, S.k), e));
        if (e.ii_count() == 0) {
            ++all_i;
            REQUIRE(e.genres == all_i_genres);
            CHECK(e.ap[0] == S.k->one());
            // the unique irreducible second parameter over this alpha
            CHECK(e.a[1] == S.k->mul(S.g, S.k->mul(e.alpha, e.alpha)));
            CHECK(e.alphaP == S.k->neg(S.k->mul(S.thinv, S.k->inv(e.alpha))));
            if (e.alpha == S.k->one() && e.a[1] == S.g) frozen_found = true;
        } else {
            ++with_ii;
            CHECK(e.ii_count() == 1);
            CHECK(e.alpha == S.k->one());
            CHECK(e.alphaP == S.thinv);
        }
    }
    CHECK(all_i == 24);
    CHECK(with_ii == 2);
    CHECK(frozen_found);
}

TEST_CASE("calibration constants and the class of an induced character") {
    Setup S;
    const Calibration cal = calibrate(S.ctx);
    CHECK(cal.kw == 156);
    CHECK(cal.uw == 1);

    const InducedRep rep = rep_make(5, 2, 3, 0, S.theta);
    const ResidualClass cls = class_of_rep(rep, cal);
    CHECK(cls.h == 153);
    CHECK(cls.delta == S.thinv);
    CHECK(class_equal(cls, ResidualClass{81, S.thinv}, S.ctx.q));

    const InducedRep tw = rep_make(5, 2, 3, 1, S.theta);
    CHECK(class_of_rep(tw, cal).h == 127);

    // the point census sits exactly on the class the character constants say
    const auto census = enumerate_engeances(type_make(5, 2, 2, -5), S.theta, S.ctx);
    CHECK(kisin_shape(census, cls, S.ctx).shape == Shape::Point);

    const FieldPtr k7 = field_make(7, 2);
    const Context ctx7 = Context::make(k7, 2);
    const Calibration cal7 = calibrate(ctx7);
    CHECK(cal7.kw == 400);
}

TEST_CASE("nongeneric identification over the four case families") {
    Setup S;
    const Fq one{S.k, S.k->one()};

    const auto generic = identify_nongeneric(rep_make(5, 2, 12, 0, one));
    CHECK(generic.case_id == 0);
    CHECK_FALSE(generic.totally_nongeneric);

    const auto c1 = identify_nongeneric(rep_make(5, 2, 3, 0, one));
    CHECK(c1.case_id == 1);
    CHECK(c1.param == 2);
    CHECK(c1.s == 0);
    CHECK_FALSE(c1.totally_nongeneric);
    CHECK(c1.modified == nongeneric_oracle(5, 1, 2, 0).front());

    const auto c1tw = identify_nongeneric(rep_make(5, 2, 3 + 26 * 5, 0, one));
    CHECK(c1tw.case_id == 1);
    CHECK(c1tw.param == 2);
    CHECK(c1tw.s == 5);

    const auto c1conj = identify_nongeneric(rep_make(5, 2, 75, 0, one));
    CHECK(c1conj.case_id == 1);
    CHECK(c1conj.param == 2);
    CHECK(c1conj.s == 0);

    const auto c2 = identify_nongeneric(rep_make(5, 2, 1, 7, one));
    CHECK(c2.case_id == 2);
    CHECK(c2.s == 7);
    CHECK(c2.totally_nongeneric);

    const auto c3 = identify_nongeneric(rep_make(5, 2, 15, 0, one));
    CHECK(c3.case_id == 3);
    CHECK(c3.param == 1);
    CHECK(c3.s == 0);
    CHECK_FALSE(c3.totally_nongeneric);

    const auto c3conj = identify_nongeneric(rep_make(5, 2, 375, 0, one));
    CHECK(c3conj.case_id == 3);
    CHECK(c3conj.param == 1);
    CHECK(c3conj.s == 0);

    const auto c4 = identify_nongeneric(rep_make(5, 2, 5 + 26 * 3, 0, one));
    CHECK(c4.case_id == 4);
    CHECK(c4.s == 3);
    CHECK(c4.totally_nongeneric);

    InducedRep bad;
    bad.p = 5;
    bad.f = 1;
    bad.c = 2;
    bad.theta = one;
    CHECK_THROWS_AS(identify_nongeneric(bad), std::invalid_argument);
}

TEST_CASE("nongeneric characters are exactly the orbit of the case forms") {
    Setup S;
    const Fq one{S.k, S.k->one()};
    int nongen = 0;
    int totally = 0;
    for (int64_t c = 1; c < 624; ++c) {
        if (c % 26 == 0) continue;
        const auto info = identify_nongeneric(rep_make(5, 2, c, 0, one));
        if (info.case_id != 0) ++nongen;
        if (info.totally_nongeneric) ++totally;
    }
    // (2p-2) case forms, q-1 twists, two conjugates, no coincidences
    CHECK(nongen == 384);
    CHECK(totally == 96);
}

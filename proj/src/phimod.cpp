#include "bk/phimod.hpp"

#include <algorithm>
#include <stdexcept>

#include "bk/errors.hpp"

namespace bk {

namespace {

int64_t imod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// First n exponent slots of x above its valuation.
Series head(const Series& x, int64_t n) {
    if (x.known_zero()) return x;
    int64_t cap = x.val() + n;
    return x.prec() <= cap ? x : x.truncated(cap);
}

} // namespace

Context Context::make(FieldPtr k, int f, int64_t window_mult) {
    if (!k) throw std::invalid_argument("context needs a coefficient field");
    if (f < 1) throw std::invalid_argument("degree f must be positive");
    if (window_mult < 1) throw std::invalid_argument("window multiplier must be positive");
    Context ctx;
    ctx.k = std::move(k);
    ctx.f = f;
    ctx.q = ipow(ctx.k->p(), f);
    ctx.window = 4 * ctx.q * ctx.q * window_mult;
    return ctx;
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 phi_sub(const Mat2& m, int64_t i) {
    return {phi_sub(m.a, i), phi_sub(m.b, i), phi_sub(m.c, i), phi_sub(m.d, i)};
}

Series mat_det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

DualMat2 DualMat2::from(const Mat2& m) {
    return {Dual::from(m.a), Dual::from(m.b), Dual::from(m.c), Dual::from(m.d)};
}

Mat2 DualMat2::body() const { return {a.body, b.body, c.body, d.body}; }
Mat2 DualMat2::tangent() const { return {a.tan, b.tan, c.tan, d.tan}; }

DualMat2 mat_mul(const DualMat2& x, const DualMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

DualMat2 phi_sub(const DualMat2& m, int64_t i) {
    return {phi_sub(m.a, i), phi_sub(m.b, i), phi_sub(m.c, i), phi_sub(m.d, i)};
}

int Engeance::ii_count() const {
    int n = 0;
    for (Genre g : genres)
        if (g == Genre::II) ++n;
    return n;
}

Mat2 genre_matrix(Genre g, int64_t d, int64_t btw, int32_t a, int32_t ap, const FieldPtr& k) {
    const int64_t p = k->p();
    const int32_t one = k->one();
    Mat2 m;
    switch (g) {
    case Genre::IEta:
        m = {Series::monomial(k, one, d + 1), Series::zero(k),
             Series::monomial(k, a, d), Series::monomial(k, one, p - 1)};
        break;
    case Genre::IEtaP:
        m = {Series::monomial(k, one, d), Series::monomial(k, ap, p),
             Series::zero(k), Series::monomial(k, one, p)};
        break;
    case Genre::II:
        m = {Series::monomial(k, a, d), Series::monomial(k, one, p),
             Series::monomial(k, one, d), Series::monomial(k, ap, p - 1)};
        break;
    }
    if (btw != 0) {
        m.a = m.a.scaled(one, -btw);
        m.b = m.b.scaled(one, -btw);
        m.c = m.c.scaled(one, -btw);
        m.d = m.d.scaled(one, -btw);
    }
    return m;
}

std::vector<Mat2> genre_matrices(const TameType& t, const Engeance& e, const FieldPtr& k) {
    const int f = t.f;
    if (static_cast<int>(e.genres.size()) != f || static_cast<int>(e.a.size()) != f ||
        static_cast<int>(e.ap.size()) != f)
        throw std::invalid_argument("engeance data does not match the degree");
    if (k->p() != t.p) throw FieldMismatch("coefficient field has the wrong characteristic");
    const auto dd = t.ddigits();
    const auto bb = t.bdigits();
    std::vector<Mat2> out;
    out.reserve(f);
    for (int i = 0; i < f; ++i) {
        Mat2 m = genre_matrix(e.genres[i], dd[i], bb[f - 1 - i], e.a[i], e.ap[i], k);
        if (i == f - 1) {
            m.a = m.a.scaled(e.alpha);
            m.b = m.b.scaled(e.alpha);
            m.c = m.c.scaled(e.alphaP);
            m.d = m.d.scaled(e.alphaP);
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<DualMat2> genre_matrices_dual(const TameType& t, const Engeance& e, int pos,
                                          int which, const FieldPtr& k) {
    const int f = t.f;
    if (pos < 0 || pos >= f) throw std::invalid_argument("parameter position out of range");
    if (which != 0 && which != 1) throw std::invalid_argument("parameter slot must be 0 or 1");
    const Genre g = e.genres[pos];
    if ((g == Genre::IEta && which != 0) || (g == Genre::IEtaP && which != 1))
        throw std::invalid_argument("genre has no parameter in that slot");

    auto mats = genre_matrices(t, e, k);
    std::vector<DualMat2> out;
    out.reserve(f);
    for (const Mat2& m : mats) out.push_back(DualMat2::from(m));

    const auto dd = t.ddigits();
    const auto bb = t.bdigits();
    const int64_t p = k->p();
    const int64_t d = dd[pos];
    const int64_t btw = bb[f - 1 - pos];
    int32_t coef = k->one();

    // The entry carrying the parameter, and the diagonal unit acting on its
    // row when the parameter sits in the last factor.
    Series* slot = nullptr;
    int64_t expn = 0;
    switch (g) {
    case Genre::IEta:
        slot = &out[pos].c.tan;
        expn = d - btw;
        if (pos == f - 1) coef = e.alphaP;
        break;
    case Genre::IEtaP:
        slot = &out[pos].b.tan;
        expn = p - btw;
        if (pos == f - 1) coef = e.alpha;
        break;
    case Genre::II:
        if (which == 0) {
            slot = &out[pos].a.tan;
            expn = d - btw;
            if (pos == f - 1) coef = e.alpha;
        } else {
            slot = &out[pos].d.tan;
            expn = p - 1 - btw;
            if (pos == f - 1) coef = e.alphaP;
        }
        break;
    }
    *slot = *slot + Series::monomial(k, coef, expn);
    return out;
}

Mat2 product_frobenius(const std::vector<Mat2>& mats) {
    if (mats.empty()) throw std::invalid_argument("empty factor list");
    const int f = static_cast<int>(mats.size());
    Mat2 acc = mats[f - 1];
    for (int j = 1; j < f; ++j) acc = mat_mul(acc, phi_sub(mats[f - 1 - j], j));
    return acc;
}

DualMat2 product_frobenius(const std::vector<DualMat2>& mats) {
    if (mats.empty()) throw std::invalid_argument("empty factor list");
    const int f = static_cast<int>(mats.size());
    DualMat2 acc = mats[f - 1];
    for (int j = 1; j < f; ++j) acc = mat_mul(acc, phi_sub(mats[f - 1 - j], j));
    return acc;
}

std::pair<Series, Series> twisted_invariants(const Mat2& B, const Context& ctx) {
    if (B.c.known_zero()) {
        if (!B.c.exact_zero())
            throw PrecisionExhausted("lower-left entry not known to be zero or nonzero");
        return {phi_sub(B.a, ctx.f), Series::zero(ctx.k)};
    }
    Series phic = phi_sub(B.c, ctx.f);
    Series T = phi_sub(B.a, ctx.f) + series_div(B.d * phic, B.c, ctx.window);
    Series Delta = series_div(phic * mat_det(B), B.c, ctx.window);
    return {T, Delta};
}

ResidualClass class_canonical(ResidualClass cls, int64_t q) {
    const int64_t m = q * q - 1;
    cls.h = std::min(imod(cls.h, m), imod(q * imod(cls.h, m), m));
    return cls;
}

bool class_equal(const ResidualClass& x, const ResidualClass& y, int64_t q) {
    return x.delta == y.delta && class_canonical(x, q).h == class_canonical(y, q).h;
}

std::optional<ResidualClass> residual_class(const Mat2& B, const Context& ctx) {
    const FieldPtr& k = ctx.k;
    const int64_t q = ctx.q;

    if (B.c.known_zero()) {
        if (B.c.exact_zero()) return std::nullopt;
        throw PrecisionExhausted("lower-left entry not known to be zero or nonzero");
    }
    Series det = mat_det(B);
    if (det.known_zero()) {
        if (det.exact_zero()) throw std::domain_error("determinant vanishes");
        throw PrecisionExhausted("determinant valuation undetermined");
    }
    const auto [vc, lc] = B.c.lowest_term();
    (void)lc;
    const auto [vdet, ldet] = det.lowest_term();
    const int64_t vD = (q - 1) * vc + vdet;
    if (imod(vD, q + 1) == 0) return std::nullopt;

    // Irreducibility also needs (q+1) val T > q val Delta.  T = phi(a) +
    // d phi(c)/c is probed coefficient by coefficient up to the threshold;
    // the first nonzero coefficient found certifies failure.
    const int64_t thresh = floor_div(q * vD, q + 1);
    Series y = Series::zero(k);
    Series num = B.d * phi_sub(B.c, ctx.f);
    if (num.exact_zero()) {
        // no contribution
    } else if (num.known_zero()) {
        y = Series::zero_to(k, num.prec() - vc);
    } else {
        int64_t vq = num.val() - vc;
        y = vq > thresh ? Series::zero_to(k, vq) : series_div(num, B.c, thresh + 1 - vq);
    }
    Series tlow = phi_sub(B.a, ctx.f) + y;
    if (tlow.known_zero()) {
        if (tlow.prec() <= thresh)
            throw PrecisionExhausted("valuation of the twisted trace undetermined");
    } else {
        for (int64_t e = tlow.val(); e <= thresh; ++e)
            if (tlow.coeff(e) != 0) return std::nullopt;
    }
    return ResidualClass{imod(vD, q * q - 1), k->neg(ldet)};
}

CompanionResult companion_reduce(const Mat2& B, const Context& ctx, bool want_transform) {
    const FieldPtr& k = ctx.k;
    const int64_t q = ctx.q;
    const int64_t W = ctx.window;
    const int f = ctx.f;
    const int32_t one = k->one();
    const int32_t neg1 = k->neg(one);

    auto cls = residual_class(B, ctx);
    if (!cls) throw std::domain_error("companion form needs a residually irreducible module");

    // Cyclic step: P1 = [[1, a],[0, c]] turns B into [[0, -Delta],[1, T]].
    Series phic = phi_sub(B.c, f);
    Series det = mat_det(B);
    Series b = series_div(phic * det, B.c, W).scaled(neg1);
    Series s;
    {
        Series num = B.d * phic;
        if (num.exact_zero())
            s = phi_sub(B.a, f);
        else if (num.known_zero())
            s = phi_sub(B.a, f) + Series::zero_to(k, num.prec() - B.c.val());
        else
            s = phi_sub(B.a, f) + series_div(num, B.c, W);
    }
    Mat2 P{Series::one(k), B.a, Series::zero(k), B.c};

    // y = s/b is computed against the factored divisor b =
    // -(phi(c) det)/c * (unit factors), the units being 1 + O(v^fuzz)
    // accumulated by later passes.
    int64_t unit_fuzz = Series::kExactPrec;

    int passes = 0;
    int64_t last_vs = INT64_MIN;
    while (!s.known_zero()) {
        if (++passes > 64) throw NoConvergence("companion iteration did not terminate");
        if (s.val() <= last_vs) throw NoConvergence("companion iteration stalled");
        last_vs = s.val();

        Series y = series_div(series_div(s * B.c.scaled(neg1), phic, W), det, W);
        if (unit_fuzz != Series::kExactPrec && !y.known_zero())
            y = y.truncated(std::min(y.prec(), y.val() + unit_fuzz));
        if (y.known_zero()) throw NoConvergence("division lost the leading term");
        const int64_t vy = y.val();
        const int64_t vb = b.val();

        // Kill step with E = [[1,0],[y,1]] leaves [[b phi(y), b],[c', r]],
        // r = s - y b = O(v^{prec(y)+vb}) by construction of the division,
        // c' = 1 + r phi(y).  A cyclic step then gives back the companion
        // shape with b <- b phi(c') - (phi(c')/c') b phi(y) r and
        // s <- phi(b phi(y)) + r phi(c')/c'.
        Series r = Series::zero_to(k, y.prec() + vb);
        const int64_t fuzz = r.prec() + q * vy;
        Series cp = Series::one(k) + Series::zero_to(k, fuzz);
        Series bt = head(b, W / q + 2);
        Series yt = head(y, W / q / q + 2);

        Series bnext = b * phi_sub(cp, f) - Series::zero_to(k, vb + q * vy + r.prec());
        s = phi_sub(bt, f) * phi_sub(yt, 2 * f) + Series::zero_to(k, r.prec());
        unit_fuzz = std::min(unit_fuzz, fuzz);

        if (want_transform) {
            Series at = bt * phi_sub(yt, f);
            Mat2 step{Series::one(k), at, y, y * at + cp};
            P = mat_mul(P, step);
        }
        b = std::move(bnext);
    }

    const auto [h, lead] = b.lowest_term();
    const int32_t delta = lead;
    if (imod(h, q * q - 1) != cls->h || delta != cls->delta)
        throw std::logic_error("companion entry disagrees with the determinant class");

    // Monomial normalization: with w = delta^{-1} v^{-h} b - 1 the diagonal
    // change diag(u, phi u), u = prod_{j>=0} phi^{2j}(1 + w), scrubs the
    // higher terms of b.
    Series w = b.scaled(k->inv(delta), -h) - Series::one(k);
    Series u = Series::one(k);
    if (!w.known_zero()) {
        const int64_t vw = w.val();
        if (vw <= 0) throw std::logic_error("companion entry has a bad leading term");
        int64_t scale = 1;
        for (int j = 0; scale * vw <= W; ++j, scale *= q * q) {
            Series wt = head(w, W / scale + 2);
            Series factor;
            if (scale == 1) {
                factor = Series::one(k) + wt;
            } else {
                factor = Series::one(k);
                for (int64_t e = wt.window_start(); e < wt.window_end(); ++e) {
                    int32_t cv = wt.coeff(e);
                    if (cv != 0 && e * scale <= W)
                        factor = factor + Series::monomial(k, cv, e * scale);
                }
            }
            u = (u * factor).truncated(W + 1);
        }
        if (!w.exact()) u = u.truncated(std::min(W + 1, w.prec()));
        Series bn = series_div(b * phi_sub(head(u, W / (q * q) + 2), 2 * f), u, W);
        const auto [hn, ln] = bn.lowest_term();
        bool clean = hn == h && ln == delta;
        for (int64_t e = bn.window_start(); clean && e < bn.window_end(); ++e)
            if (e != h && bn.coeff(e) != 0) clean = false;
        if (!clean) throw std::logic_error("monomial normalization failed");
    }
    if (want_transform && !(u == Series::one(k))) {
        Mat2 pn{u, Series::zero(k), Series::zero(k), phi_sub(u, f)};
        P = mat_mul(P, pn);
    }

    CompanionResult res;
    res.h = h;
    res.delta = delta;
    res.have_transform = want_transform;
    if (want_transform) res.P = P;
    return res;
}

std::pair<CompanionResult, Mat2> companion_reduce_dual(const DualMat2& Bd, const Context& ctx) {
    const FieldPtr& k = ctx.k;
    const int32_t neg1 = k->neg(k->one());
    CompanionResult res = companion_reduce(Bd.body(), ctx, true);

    Series detP = mat_det(res.P);
    auto inv_entry = [&](const Series& x) {
        return Dual::from(x.known_zero() ? x : series_div(x, detP, ctx.window));
    };
    DualMat2 pinv{inv_entry(res.P.d), inv_entry(res.P.b.scaled(neg1)),
                  inv_entry(res.P.c.scaled(neg1)), inv_entry(res.P.a)};
    DualMat2 M = mat_mul(mat_mul(pinv, Bd), phi_sub(DualMat2::from(res.P), ctx.f));

    if (!M.a.body.known_zero() || !M.d.body.known_zero())
        throw std::logic_error("transported body is not in companion form");
    const auto [hb, lb] = M.b.body.lowest_term();
    const auto [hc, lc] = M.c.body.lowest_term();
    if (hb != res.h || lb != res.delta || hc != 0 || lc != k->one())
        throw std::logic_error("transported body disagrees with the companion data");
    return {res, M.tangent()};
}

bool mauvais_genre(const std::vector<Genre>& genres, const TameType& t) {
    const int f = t.f;
    if (static_cast<int>(genres.size()) != f)
        throw std::invalid_argument("genre vector does not match the degree");
    for (Genre g : genres)
        if (g == Genre::II) return false;
    const auto cd = t.cdigits();
    const int64_t p = t.p;
    for (int i = 0; i < f; ++i) {
        const Genre prev = genres[(i + f - 1) % f];
        const Genre cur = genres[i];
        int64_t need;
        if (prev == Genre::IEta)
            need = cur == Genre::IEta ? 1 : 0;
        else
            need = cur == Genre::IEtaP ? p - 2 : p - 1;
        if (cd[f - 1 - i] != need) return false;
    }
    return true;
}

} // namespace bk

#include "bk/engeance.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bk {

namespace {

int64_t imod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t ipow(int64_t b, int64_t e) {
    int64_t r = 1;
    for (; e > 0; --e) r *= b;
    return r;
}

} // namespace

Engeance canonicalize(const Engeance& e, const FieldPtr& k) {
    const size_t f = e.genres.size();
    if (e.a.size() != f || e.ap.size() != f)
        throw std::invalid_argument("parameter lists must match the genre vector");

    std::vector<int> eps(f, 1);
    int nII = 0;
    for (size_t i = 0; i < f; ++i) {
        eps[i] = nII % 2 == 0 ? 1 : -1;
        if (e.genres[i] == Genre::II) ++nII;
    }

    Engeance out = e;
    int32_t lam = 0;
    if (nII % 2 == 1) {
        if (e.alpha == 0) throw std::invalid_argument("diagonal unit alpha must be nonzero");
        lam = e.alpha;
        out.alpha = k->one();
        out.alphaP = k->mul(e.alpha, e.alphaP);
    } else {
        for (size_t i = 0; i < f && lam == 0; ++i) {
            if (e.genres[i] == Genre::IEta && e.a[i] != 0)
                lam = eps[i] == 1 ? k->inv(e.a[i]) : e.a[i];
            else if (e.genres[i] == Genre::IEtaP && e.ap[i] != 0)
                lam = eps[i] == 1 ? e.ap[i] : k->inv(e.ap[i]);
        }
        if (lam == 0)
            throw NotNormalizable("every parameter vanishes and the genre vector has even II-count");
    }

    for (size_t i = 0; i < f; ++i) {
        const int32_t le = eps[i] == 1 ? lam : k->inv(lam);
        out.a[i] = k->mul(le, e.a[i]);
        out.ap[i] = k->mul(k->inv(le), e.ap[i]);
    }
    return out;
}

std::vector<CensusEntry> enumerate_engeances(const TameType& t, const Fq& theta,
                                             const Context& ctx) {
    if (!theta.F || !theta.F->same(*ctx.k))
        throw FieldMismatch("theta must live in the census coefficient field");
    if (theta.rep == 0) throw std::invalid_argument("theta must be a unit");
    if (t.p != ctx.k->p() || t.f != ctx.f)
        throw std::invalid_argument("type and context disagree on (p, f)");

    const FieldPtr& k = ctx.k;
    const int f = t.f;
    const int64_t K = k->q();
    const int32_t thinv = k->inv(theta.rep);

    std::vector<CensusEntry> out;
    auto push_candidate = [&](const Engeance& e) {
        const Mat2 B = product_frobenius(genre_matrices(t, e, k));
        if (auto cls = residual_class(B, ctx)) out.push_back({e, *cls});
    };
    auto set_param = [&](Engeance& e, size_t pos, int32_t v) {
        if (e.genres[pos] == Genre::IEta)
            e.a[pos] = v;
        else
            e.ap[pos] = v;
    };
    auto fill_free = [&](auto&& self, Engeance& e, const std::vector<size_t>& free_pos,
                         size_t idx) -> void {
        if (idx == free_pos.size()) {
            push_candidate(e);
            return;
        }
        for (int64_t v = 0; v < K; ++v) {
            set_param(e, free_pos[idx], static_cast<int32_t>(v));
            self(self, e, free_pos, idx + 1);
        }
    };

    std::vector<Genre> g(f, Genre::IEta);
    for (int64_t code = 0; code < ipow(3, f); ++code) {
        int64_t c = code;
        int nII = 0;
        std::vector<size_t> ipos;
        for (int i = 0; i < f; ++i, c /= 3) {
            switch (c % 3) {
                case 0: g[i] = Genre::IEta; break;
                case 1: g[i] = Genre::IEtaP; break;
                default: g[i] = Genre::II; ++nII; break;
            }
            if (g[i] != Genre::II) ipos.push_back(i);
        }
        if (ipos.empty()) continue;

        Engeance base;
        base.genres = g;
        base.a.assign(f, 0);
        base.ap.assign(f, 0);

        if (nII % 2 == 1) {
            base.alpha = k->one();
            base.alphaP = thinv;
            fill_free(fill_free, base, ipos, 0);
        } else {
            for (int64_t al = 1; al < K; ++al) {
                base.alpha = static_cast<int32_t>(al);
                base.alphaP = k->neg(k->mul(thinv, k->inv(base.alpha)));
                for (size_t j = 0; j < ipos.size(); ++j) {
                    for (size_t i = 0; i <= j; ++i) set_param(base, ipos[i], 0);
                    set_param(base, ipos[j], k->one());
                    const std::vector<size_t> rest(ipos.begin() + j + 1, ipos.end());
                    fill_free(fill_free, base, rest, 0);
                }
            }
        }
    }
    return out;
}

ShapeResult kisin_shape(const std::vector<CensusEntry>& census, const ResidualClass& target,
                        const Context& ctx) {
    ShapeResult res;
    for (const auto& ent : census)
        if (class_equal(ent.cls, target, ctx.q)) res.members.push_back(ent);

    if (res.members.empty()) {
        res.shape = Shape::Empty;
        return res;
    }
    if (res.members.size() == 1) {
        res.shape = Shape::Point;
        return res;
    }

    std::map<std::vector<Genre>, int64_t> buckets;
    for (const auto& ent : res.members) ++buckets[ent.e.genres];

    const int64_t K = ctx.k->q();
    bool line = static_cast<int64_t>(res.members.size()) == K + 1 && buckets.size() == 3;
    int ones_with_ii = 0;
    int big_all_i = 0;
    for (const auto& [gv, n] : buckets) {
        if (!line) break;
        const bool has_ii = std::find(gv.begin(), gv.end(), Genre::II) != gv.end();
        if (n == 1 && has_ii)
            ++ones_with_ii;
        else if (n == K - 1 && !has_ii)
            ++big_all_i;
        else
            line = false;
    }
    if (!line || ones_with_ii != 2 || big_all_i != 1)
        throw UnrecognizedShape("matching engeances form neither a point nor a projective line; "
                                + std::to_string(res.members.size()) + " members in "
                                + std::to_string(buckets.size()) + " genre vectors");
    res.shape = Shape::ProjLine;
    return res;
}

Calibration calibrate(const Context& ctx) {
    const int64_t p = ctx.p();
    Calibration cal;
    for (int j = 0; j < 2 * ctx.f; ++j) cal.kw += ipow(p, j);
    cal.uw = ctx.k->one();

    if (ctx.f == 2) {
        // Pinned self-check: for the type (1, -p) with theta = 1, the unique
        // irreducible engeance is (I_eta, II) with all parameters zero, and
        // its class must be the one the constants assign to (c, s) = (2, 0).
        const TameType t = type_make(p, 2, 1, -p);
        Engeance e;
        e.genres = {Genre::IEta, Genre::II};
        e.a = {0, 0};
        e.ap = {0, 0};
        e.alpha = ctx.k->one();
        e.alphaP = ctx.k->one();
        const Mat2 B = product_frobenius(genre_matrices(t, e, ctx.k));
        const auto cls = residual_class(B, ctx);
        const ResidualClass want{imod(cal.kw - 2, ctx.q * ctx.q - 1), ctx.k->one()};
        if (!cls || !class_equal(*cls, want, ctx.q))
            throw CalibrationFailed("pinned engeance class disagrees with the character constants");
    }
    return cal;
}

ResidualClass class_of_rep(const InducedRep& rep, const Calibration& cal) {
    const int64_t q = ipow(rep.p, rep.f);
    const int64_t m = q * q - 1;
    const int64_t h = imod(cal.kw - (rep.c + (q + 1) * rep.s), m);
    const int32_t delta = rep.theta.F->mul(rep.theta.F->inv(rep.theta.rep), cal.uw);
    return {h, delta};
}

NongenericInfo identify_nongeneric(const InducedRep& rep) {
    if (rep.f != 2) throw std::invalid_argument("nongeneric classification requires degree 2");
    const int64_t p = rep.p;
    const int64_t q = p * p;
    const int64_t m = q * q - 1;
    const int64_t target = imod(rep.c + (q + 1) * rep.s, m);

    struct Match {
        int id;
        int64_t param;
        int64_t s;
    };
    std::vector<Match> found;
    auto try_form = [&](int64_t conj, int id, int64_t param, int64_t cp) {
        const int64_t d = imod(conj - cp, m);
        if (d % (q + 1) != 0) return;
        const int64_t sp = d / (q + 1);
        for (const auto& mt : found)
            if (mt.id == id && mt.param == param && mt.s == sp) return;
        found.push_back({id, param, sp});
    };
    for (const int64_t conj : {target, imod(q * target, m)}) {
        for (int64_t r0 = 1; r0 <= p - 2; ++r0) try_form(conj, 1, r0, 1 + r0);
        try_form(conj, 2, 0, 1);
        for (int64_t r1 = 0; r1 <= p - 3; ++r1) try_form(conj, 3, r1, p * (2 + r1));
        try_form(conj, 4, 0, p);
    }

    NongenericInfo info;
    if (found.empty()) return info;
    if (found.size() > 1)
        throw InconsistentSystem("character matches more than one nongeneric form");
    const Match& mt = found.front();
    info.case_id = mt.id;
    info.param = mt.param;
    info.s = mt.s;
    info.totally_nongeneric = mt.id == 2 || mt.id == 4;
    info.modified = nongeneric_oracle(p, mt.id, mt.param, mt.s).front();
    return info;
}

} // namespace bk

#include "bk/ext1.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "bk/errors.hpp"

namespace bk {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
    int64_t v = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --v;
    return v;
}

int64_t imod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::map<int64_t, int32_t> quotient_reduce(const Series& x, int64_t m, int64_t q) {
    const FieldPtr& k = x.field();
    const int64_t q2 = q * q;
    const int64_t period = q2 - 1;
    // v^e survives the quotient iff e (q^2 - 1) <= -m, so every exponent up
    // to this bound must be a known coefficient
    const int64_t bound = floor_div(-m, period);
    if (!x.exact() && x.prec() <= bound)
        throw PrecisionExhausted("quotient reduction needs coefficients up to v^" +
                                 std::to_string(bound) + ", have precision " +
                                 std::to_string(x.prec()));

    std::map<int64_t, int32_t> acc;
    std::vector<std::pair<int64_t, int32_t>> work;
    for (int64_t e = x.window_start(); e < x.window_end(); ++e) {
        const int32_t c = x.coeff(e);
        if (c != 0) work.push_back({e, c});
    }
    while (!work.empty()) {
        const auto [e, c] = work.back();
        work.pop_back();
        if (e * period > -m) continue;
        if (e * period != -m && imod(e - m, q2) == 0) {
            // v^{m + q^2 n} = v^n in the quotient; the new exponent is
            // strictly larger, so the chain stops at the bound
            work.push_back({(e - m) / q2, c});
            continue;
        }
        const auto it = acc.find(e);
        const int32_t s = k->add(it == acc.end() ? 0 : it->second, c);
        if (s == 0) {
            if (it != acc.end()) acc.erase(it);
        } else {
            acc[e] = s;
        }
    }
    return acc;
}

Ext1Class ext_coords(const Mat2& A, int64_t h, int32_t delta, const Context& ctx) {
    if (delta == 0) throw std::invalid_argument("ext_coords: delta must be a unit");
    const FieldPtr& k = ctx.k;
    const Series unit = Series::monomial(k, k->inv(delta), -h);
    const Series c1 = unit * (phi_sub(A.a, ctx.f) + A.d);
    const Series c2 = unit * A.b + phi_sub(A.c, ctx.f);
    Ext1Class out;
    out.first = quotient_reduce(c1, (ctx.q - 1) * h, ctx.q);
    out.second = quotient_reduce(c2, 0, ctx.q);
    return out;
}

std::vector<Ext1Class> tangent_images(const std::vector<DualMat2>& family, const Context& ctx) {
    std::vector<Ext1Class> out;
    out.reserve(family.size());
    bool have = false;
    int64_t h = 0;
    int32_t delta = 1;
    for (const auto& D : family) {
        const auto [res, tan] = companion_reduce_dual(D, ctx);
        if (!have) {
            h = res.h;
            delta = res.delta;
            have = true;
        } else if (res.h != h || res.delta != delta) {
            throw InconsistentSystem("tangent family does not share one companion body: (" +
                                     std::to_string(h) + ", " + std::to_string(delta) +
                                     ") vs (" + std::to_string(res.h) + ", " +
                                     std::to_string(res.delta) + ")");
        }
        out.push_back(ext_coords(tan, h, delta, ctx));
    }
    return out;
}

std::vector<DualMat2> point_directions(const TameType& t, const Engeance& e, const Context& ctx) {
    std::vector<DualMat2> out;
    for (int pos = 0; pos < ctx.f; ++pos) {
        if (e.genres[pos] != Genre::IEtaP)
            out.push_back(product_frobenius(genre_matrices_dual(t, e, pos, 0, ctx.k)));
        if (e.genres[pos] != Genre::IEta)
            out.push_back(product_frobenius(genre_matrices_dual(t, e, pos, 1, ctx.k)));
    }
    return out;
}

int ext_rank(const std::vector<Ext1Class>& classes, const FieldPtr& k) {
    std::set<std::pair<int, int64_t>> support;
    for (const auto& cl : classes) {
        for (const auto& [e, c] : cl.first) support.insert({0, e});
        for (const auto& [e, c] : cl.second) support.insert({1, e});
    }
    std::map<std::pair<int, int64_t>, int> col;
    int ncols = 0;
    for (const auto& s : support) col[s] = ncols++;

    std::vector<std::vector<int32_t>> rows;
    rows.reserve(classes.size());
    for (const auto& cl : classes) {
        std::vector<int32_t> row(ncols, 0);
        for (const auto& [e, c] : cl.first) row[col[{0, e}]] = c;
        for (const auto& [e, c] : cl.second) row[col[{1, e}]] = c;
        rows.push_back(std::move(row));
    }

    int rank = 0;
    for (int c = 0; c < ncols && rank < (int)rows.size(); ++c) {
        int pivot = -1;
        for (int r = rank; r < (int)rows.size(); ++r)
            if (rows[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        const int32_t pinv = k->inv(rows[rank][c]);
        for (int r = rank + 1; r < (int)rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const int32_t f = k->mul(rows[r][c], pinv);
            for (int j = c; j < ncols; ++j)
                rows[r][j] = k->sub(rows[r][j], k->mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

bool independent(const std::vector<Ext1Class>& classes, const FieldPtr& k) {
    return ext_rank(classes, k) == (int)classes.size();
}

namespace {

PresentedRing ring_from_weights(const std::vector<SerreWeight>& W, const NongenericInfo& ng) {
    using Kind = PresentedRing::Kind;
    if (W.empty()) return {Kind::Zero, 0, 0};
    if (ng.case_id != 0 && std::find(W.begin(), W.end(), ng.modified) != W.end())
        return {Kind::XYplusPk, 2, 1};
    if (ng.totally_nongeneric) return {Kind::StrictSubring, 0, 0};
    return {Kind::XYplusPk, 1, 1};
}

PresentedRing ring_from_shape(Shape s, const NongenericInfo& ng) {
    using Kind = PresentedRing::Kind;
    switch (s) {
        case Shape::Empty:
            return {Kind::Zero, 0, 0};
        case Shape::ProjLine:
            return {Kind::XYplusPk, 2, 1};
        case Shape::Point:
            break;
    }
    if (ng.totally_nongeneric) return {Kind::StrictSubring, 0, 0};
    return {Kind::XYplusPk, 1, 1};
}

}  // namespace

PresentedRing theorem_ring(const InducedRep& target, const TameType& t) {
    if (target.p != t.p || target.f != t.f)
        throw std::invalid_argument("theorem_ring: target and type live over different fields");
    const auto W = weights_intersect(weights_of_rep(target), weights_of_type_f2(t));
    return ring_from_weights(W, identify_nongeneric(target));
}

PresentedRing deformation_ring(const InducedRep& target, const TameType& t, const Context& ctx,
                               const Calibration& cal, bool confirm) {
    if (target.p != ctx.p() || t.p != ctx.p() || target.f != ctx.f || t.f != ctx.f)
        throw std::invalid_argument("deformation_ring: mismatched p or f");
    return deformation_ring(target, t, enumerate_engeances(t, target.theta, ctx), ctx, cal,
                            confirm);
}

PresentedRing deformation_ring(const InducedRep& target, const TameType& t,
                               const std::vector<CensusEntry>& census, const Context& ctx,
                               const Calibration& cal, bool confirm) {
    if (target.p != ctx.p() || t.p != ctx.p() || target.f != ctx.f || t.f != ctx.f)
        throw std::invalid_argument("deformation_ring: mismatched p or f");
    const auto shape = kisin_shape(census, class_of_rep(target, cal), ctx);
    const NongenericInfo ng = identify_nongeneric(target);
    const PresentedRing ring = ring_from_shape(shape.shape, ng);

    if (confirm) {
        if (shape.shape == Shape::Point) {
            // transport each free parameter direction of the single member
            // and measure the span of the images
            const auto family = point_directions(t, shape.members.front().e, ctx);
            const auto classes = tangent_images(family, ctx);
            const int rank = ext_rank(classes, ctx.k);
            const int expected = ng.totally_nongeneric ? 2 : 3;
            if (rank != expected)
                throw InconsistentSystem("tangent rank " + std::to_string(rank) +
                                         " at a point fibre, expected " + std::to_string(expected));
        }
        if (ring != theorem_ring(target, t))
            throw InconsistentSystem("computed ring label disagrees with the weight prediction");
    }
    return ring;
}

int64_t hs_multiplicity(const PresentedRing& ring) {
    using Kind = PresentedRing::Kind;
    if (ring.kind == Kind::Zero) return 0;
    if (ring.kind == Kind::StrictSubring)
        throw std::invalid_argument("hs_multiplicity: ring has no determined presentation");

    const int e = ring.extra_vars;
    const int dim = e + 1;
    constexpr int N = 20;

    // binomial table for counting monomials of bounded degree in e variables
    std::vector<std::vector<int64_t>> ch(N + e + 1);
    for (int n = 0; n <= N + e; ++n) {
        ch[n].assign(n + 1, 1);
        for (int r = 1; r < n; ++r) ch[n][r] = ch[n - 1][r - 1] + ch[n - 1][r];
    }

    // Hilbert function of k[X, Y, T_1..T_e] / (XY) by total degree
    std::vector<int64_t> H(N + 1, 0);
    for (int n = 0; n <= N; ++n) {
        int64_t total = 0;
        for (int s = 0; s <= n; ++s)
            total += (s == 0 ? 1 : 2) * ch[n - s + e][e];
        H[n] = total;
    }

    std::vector<int64_t> d = H;
    for (int i = 0; i < dim; ++i) {
        for (size_t j = 0; j + 1 < d.size(); ++j) d[j] = d[j + 1] - d[j];
        d.pop_back();
    }
    for (size_t j = 0; j + 1 < d.size(); ++j)
        if (d[j] != d[j + 1])
            throw InconsistentSystem("Hilbert differences fail to stabilize");
    return d.back();
}

std::vector<BMReport> bm_check_all(const std::vector<InducedRep>& targets, const Context& ctx,
                                   const Calibration& cal) {
    if (targets.empty()) return {};
    const int64_t p = ctx.p();
    const Fq& th0 = targets.front().theta;
    for (const auto& r : targets) {
        if (r.p != p || r.f != ctx.f)
            throw std::invalid_argument("bm_check: target off the context's field");
        if (!r.theta.F->same(*th0.F) || r.theta.rep != th0.rep)
            throw std::invalid_argument("bm_check: all targets must share one unramified twist");
    }

    std::vector<BMReport> reports(targets.size());
    std::vector<ResidualClass> target_cls;
    target_cls.reserve(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) {
        reports[i].target = targets[i];
        reports[i].ng = identify_nongeneric(targets[i]);
        reports[i].weights = weights_of_rep(targets[i]);
        reports[i].all_consistent = true;
        target_cls.push_back(class_of_rep(targets[i], cal));
    }

    const int64_t qm1 = ctx.q - 1;
    for (int64_t x = 0; x < qm1; ++x) {
        for (int64_t y = x + 1; y < qm1; ++y) {
            // the type is the unordered pair {x, y}: both orders give the
            // same weights and the same census classes
            const TameType t = type_make(p, ctx.f, x, y);
            const auto tweights = weights_of_type_f2(t);
            const auto census = enumerate_engeances(t, th0, ctx);
            for (size_t i = 0; i < reports.size(); ++i) {
                auto& rep = reports[i];
                ++rep.types_total;
                const auto W = weights_intersect(rep.weights, tweights);
                const auto shape = kisin_shape(census, target_cls[i], ctx);
                if (W.empty() && shape.shape == Shape::Empty) {
                    ++rep.types_zero;
                    continue;
                }
                BMTypeLine line;
                line.t = t;
                line.common = W;
                line.ring = ring_from_shape(shape.shape, rep.ng);
                const bool agrees = (line.ring == ring_from_weights(W, rep.ng));
                if (line.ring.kind == PresentedRing::Kind::StrictSubring) {
                    line.undetermined = true;
                    line.mu = -1;
                    line.consistent = agrees && W.size() == 2;
                } else {
                    line.mu = hs_multiplicity(line.ring);
                    line.consistent = agrees && line.mu == (int64_t)W.size() &&
                                      (W.size() == 0 || W.size() == 2);
                }
                if (!line.consistent) rep.all_consistent = false;
                rep.lines.push_back(std::move(line));
            }
        }
    }

    for (auto& rep : reports) {
        std::vector<SerreWeight> cert;
        for (const auto& line : rep.lines)
            if (line.consistent && !line.undetermined)
                cert.insert(cert.end(), line.common.begin(), line.common.end());
        std::sort(cert.begin(), cert.end());
        cert.erase(std::unique(cert.begin(), cert.end()), cert.end());
        rep.certified = cert;
        for (const auto& w : rep.weights)
            if (!std::binary_search(cert.begin(), cert.end(), w)) rep.uncovered.push_back(w);
    }
    return reports;
}

BMReport bm_check(const InducedRep& target, const Context& ctx, const Calibration& cal) {
    return bm_check_all({target}, ctx, cal).front();
}

}  // namespace bk

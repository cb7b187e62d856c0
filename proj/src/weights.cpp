#include "bk/weights.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace bk {

namespace {

int64_t mod(int64_t a, int64_t n) {
    int64_t r = a % n;
    return r < 0 ? r + n : r;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

SerreWeight weight_make(int64_t p, std::vector<int64_t> r, int64_t w) {
    for (int64_t rj : r)
        if (rj < 0 || rj > p - 1)
            throw std::invalid_argument("Serre weight entry out of [0, p-1]: " + std::to_string(rj));
    int64_t q = ipow(p, static_cast<int>(r.size()));
    return SerreWeight{std::move(r), mod(w, q - 1)};
}

InducedRep rep_make(int64_t p, int f, int64_t c, int64_t s, Fq theta) {
    if (f < 1) throw std::invalid_argument("need f >= 1");
    // delegate primality and size checks to the field registry
    auto Fp = field_make(p, 1);
    (void)Fp;
    int64_t q = ipow(p, f);
    c = mod(c, q * q - 1);
    if (c % (q + 1) == 0)
        throw std::invalid_argument("character exponent " + std::to_string(c) +
                                    " has niveau dividing f: the induced representation is reducible");
    if (!theta.F || theta.zero())
        throw std::invalid_argument("unramified parameter must be a nonzero field element");
    if (theta.F->p() != p)
        throw FieldMismatch("unramified parameter lives over the wrong prime");
    return InducedRep{p, f, c, mod(s, q - 1), std::move(theta)};
}

TameType type_make(int64_t p, int f, int64_t keta, int64_t ketap) {
    if (f < 1) throw std::invalid_argument("need f >= 1");
    auto Fp = field_make(p, 1);
    (void)Fp;
    int64_t q = ipow(p, f);
    keta = mod(keta, q - 1);
    ketap = mod(ketap, q - 1);
    if (keta == ketap)
        throw std::invalid_argument("tame type needs two distinct characters");
    return TameType{p, f, keta, ketap};
}

std::vector<int64_t> digits_base_p(int64_t n, int64_t p, int count) {
    if (n < 0 || n >= ipow(p, count))
        throw std::invalid_argument("digit expansion out of range: " + std::to_string(n));
    std::vector<int64_t> d(count);
    for (int i = 0; i < count; ++i) {
        d[i] = n % p;
        n /= p;
    }
    return d;
}

std::vector<int64_t> TameType::cdigits() const {
    int64_t q = ipow(p, f);
    return digits_base_p(mod(keta - ketap, q - 1), p, f);
}

std::vector<int64_t> TameType::bdigits() const { return digits_base_p(ketap, p, f); }

std::vector<int64_t> TameType::ddigits() const {
    auto c = cdigits();
    std::vector<int64_t> d(f);
    for (int i = 0; i < f; ++i) d[i] = p - 1 - c[f - 1 - i];
    return d;
}

std::vector<SerreWeight> weights_of_rep(const InducedRep& rep) {
    const int64_t p = rep.p;
    const int f = rep.f;
    const int64_t q = ipow(p, f);
    const int64_t n = q * q - 1;
    const int64_t target = mod(rep.c + (q + 1) * rep.s, n);

    std::set<SerreWeight> out;
    std::vector<int64_t> r(f, 0);
    const int64_t tuples = ipow(p, f); // r ranges over [0, p-1]^f
    for (int64_t t = 0; t < tuples; ++t) {
        int64_t v = t;
        for (int j = 0; j < f; ++j) {
            r[j] = v % p;
            v /= p;
        }
        for (int64_t A = 0; A < (int64_t(1) << f); ++A) {
            int64_t sum = 0;
            for (int j = 0; j < f; ++j) {
                int64_t term = (r[j] + 1) * ipow(p, j) % n;
                if (A & (int64_t(1) << j))
                    sum = mod(sum + term, n);
                else
                    sum = mod(sum + q * term, n);
            }
            int64_t rest = mod(target - sum, n);
            if (rest % (q + 1) != 0) continue;
            out.insert(SerreWeight{r, mod(rest / (q + 1), q - 1)});
        }
    }
    return {out.begin(), out.end()};
}

std::vector<SerreWeight> weights_of_type_f2(const TameType& t) {
    if (t.f != 2) throw std::invalid_argument("type weight list implemented for f = 2 only");
    const int64_t p = t.p;
    const int64_t q = p * p;
    auto c = t.cdigits();
    const int64_t c0 = c[0], c1 = c[1];

    std::set<SerreWeight> out;
    auto put = [&](int64_t r0, int64_t r1, int64_t w) {
        out.insert(SerreWeight{{r0, r1}, mod(w + t.ketap, q - 1)});
    };
    put(c0, c1, 0);
    if (c0 <= p - 2 && c1 >= 1) put(p - 2 - c0, c1 - 1, c0 + 1);
    if (c0 >= 1 && c1 <= p - 2) put(c0 - 1, p - 2 - c1, p * (c1 + 1));
    put(p - 1 - c0, p - 1 - c1, c0 + p * c1);
    return {out.begin(), out.end()};
}

std::vector<SerreWeight> weights_intersect(const std::vector<SerreWeight>& a,
                                           const std::vector<SerreWeight>& b) {
    std::vector<SerreWeight> sa = a, sb = b, out;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
    return out;
}

std::vector<SerreWeight> nongeneric_oracle(int64_t p, int case_id, int64_t param, int64_t s) {
    auto Fp = field_make(p, 1);
    (void)Fp;
    const int64_t q = p * p;
    std::vector<SerreWeight> out;
    auto put = [&](int64_t r0, int64_t r1, int64_t w) {
        out.push_back(SerreWeight{{r0, r1}, mod(w + s, q - 1)});
    };
    switch (case_id) {
    case 1: {
        if (param < 1 || param > p - 2)
            throw std::invalid_argument("case 1 needs 1 <= r0 <= p-2");
        const int64_t r0 = param;
        put(r0 + 1, p - 1, -1);
        put(p - 2 - r0, 0, r0 + 1 - p);
        put(p - 1 - r0, p - 2, r0);
        put(r0 - 1, p - 1, 0);
        break;
    }
    case 2:
        if (param != 0) throw std::invalid_argument("case 2 takes no parameter");
        put(1, p - 1, -1);
        put(p - 2, 0, 1 - p);
        put(p - 1, p - 2, 0);
        break;
    case 3: {
        if (param < 0 || param > p - 3)
            throw std::invalid_argument("case 3 needs 0 <= r1 <= p-3");
        const int64_t r1 = param;
        put(p - 1, r1 + 2, -p);
        put(0, p - 3 - r1, p - 1 + p * (1 + r1));
        put(p - 2, p - 2 - r1, p * (1 + r1));
        put(p - 1, r1, 0);
        break;
    }
    case 4:
        if (param != 0) throw std::invalid_argument("case 4 takes no parameter");
        put(p - 1, 1, -p);
        put(0, p - 2, p - 1);
        put(p - 2, p - 1, 0);
        break;
    default:
        throw std::invalid_argument("case id must be 1..4");
    }
    return out;
}

} // namespace bk

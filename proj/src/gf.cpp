#include "bk/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace bk {

namespace {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int64_t mod(int64_t a, int64_t n) {
    int64_t r = a % n;
    return r < 0 ? r + n : r;
}

// Dense polynomials over GF(p), coefficients ascending, no trailing zeros.
using Poly = std::vector<int64_t>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    // reduce modulo the monic f
    const size_t m = f.size() - 1;
    for (size_t i = r.size(); i-- > m;) {
        int64_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < m; ++j)
            r[i - m + j] = mod(r[i - m + j] - c * f[j], p);
    }
    r.resize(m);
    trim(r);
    return r;
}

Poly poly_powmod(Poly base, int64_t e, const Poly& f, int64_t p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        int64_t lead = b.back();
        int64_t il = 1;
        { // inverse of lead mod p
            int64_t e = p - 2, t = lead, r = 1;
            while (e) {
                if (e & 1) r = r * t % p;
                t = t * t % p;
                e >>= 1;
            }
            il = r;
        }
        Poly bm = b;
        for (auto& c : bm) c = c * il % p;
        while (a.size() >= bm.size()) {
            int64_t c = a.back();
            if (c != 0) {
                size_t off = a.size() - bm.size();
                for (size_t j = 0; j < bm.size(); ++j)
                    a[off + j] = mod(a[off + j] - c * bm[j], p);
            }
            a.pop_back();
            trim(a);
            if (a.size() < bm.size()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    return a;
}

// x^{p^k} mod f, computed by k successive p-th powers.
Poly frob_powmod(const Poly& f, int64_t p, int k) {
    Poly t = {0, 1};
    for (int i = 0; i < k; ++i) t = poly_powmod(t, p, f, p);
    return t;
}

bool poly_irreducible(const Poly& f, int64_t p) {
    const int m = static_cast<int>(f.size()) - 1;
    if (m < 1) return false;
    if (m == 1) return true;
    // x^{p^m} == x mod f, and gcd(x^{p^{m/r}} - x, f) = 1 for prime r | m.
    Poly xm = frob_powmod(f, p, m);
    Poly x = {0, 1};
    if (xm != x) return false;
    int rest = m;
    for (int r = 2; r <= rest; ++r) {
        if (rest % r != 0) continue;
        while (rest % r == 0) rest /= r;
        Poly t = frob_powmod(f, p, m / r);
        // t - x
        Poly d = t;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = mod(d[1] - 1, p);
        trim(d);
        Poly g = poly_gcd(d, f, p);
        if (!(g.size() == 1)) return false;
    }
    return true;
}

std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> fs;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

} // namespace

Field::Field(int64_t p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw NonPrime(p);
    if (p < 5) throw PTooSmall(p);
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < m; ++i) q_ *= p;

    // Scan monic degree-m polynomials in lexicographic order of the
    // coefficient tuple (c_0, ..., c_{m-1}), constant term compared first.
    Poly f(m + 1, 0);
    f[m] = 1;
    bool found = false;
    std::vector<int64_t> t(m, 0);
    for (int64_t n = 0; n < q_ && !found; ++n) {
        // digits of n, most significant first, give the tuple directly
        int64_t v = n;
        for (int i = m - 1; i >= 0; --i) {
            t[i] = v % p;
            v /= p;
        }
        for (int i = 0; i < m; ++i) f[i] = t[i];
        if (f[0] != 0 && poly_irreducible(f, p)) found = true;
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
    modulus_.assign(f.begin(), f.end());
    build_tables();
}

Field::Field(int64_t p, std::vector<int64_t> modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p)) throw NonPrime(p);
    if (p < 5) throw PTooSmall(p);
    if (modulus_.size() < 2 || modulus_.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree >= 1");
    for (auto& c : modulus_) c = mod(c, p);
    modulus_.back() = 1;
    m_ = static_cast<int>(modulus_.size()) - 1;
    q_ = 1;
    for (int i = 0; i < m_; ++i) q_ *= p;
    Poly f(modulus_.begin(), modulus_.end());
    if (!poly_irreducible(f, p)) throw ReducibleModulus("degree " + std::to_string(m_) + " over GF(" + std::to_string(p) + ")");
    build_tables();
}

void Field::build_tables() {
    Poly f(modulus_.begin(), modulus_.end());
    const auto facs = prime_factors(q_ - 1);

    auto packed_to_poly = [&](int64_t a) {
        Poly r;
        while (a) {
            r.push_back(a % p_);
            a /= p_;
        }
        return r;
    };
    auto poly_to_packed = [&](const Poly& g) {
        int64_t a = 0;
        for (size_t i = g.size(); i-- > 0;) a = a * p_ + g[i];
        return static_cast<int32_t>(a);
    };

    // Least primitive element in coefficient-tuple order.
    bool found = false;
    std::vector<int64_t> t(m_, 0);
    for (int64_t n = 1; n < q_ && !found; ++n) {
        int64_t v = n;
        for (int i = m_ - 1; i >= 0; --i) {
            t[i] = v % p_;
            v /= p_;
        }
        int64_t packed = 0;
        for (int i = m_; i-- > 0;) packed = packed * p_ + t[i];
        Poly g = packed_to_poly(packed);
        bool primitive = true;
        for (int64_t r : facs) {
            if (poly_powmod(g, (q_ - 1) / r, f, p_) == Poly{1}) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen_ = static_cast<int32_t>(packed);
            found = true;
        }
    }
    if (!found) throw std::logic_error("no primitive element found");

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    Poly acc = {1};
    Poly g = packed_to_poly(gen_);
    for (int64_t e = 0; e < q_ - 1; ++e) {
        int32_t packed = poly_to_packed(acc);
        exp_[e] = packed;
        if (log_[packed] != -1) throw std::logic_error("generator order too small");
        log_[packed] = static_cast<int32_t>(e);
        acc = poly_mulmod(acc, g, f, p_);
    }
    if (acc != Poly{1}) throw std::logic_error("generator order mismatch");
}

int32_t Field::add(int32_t a, int32_t b) const {
    int64_t r = 0, mul = 1;
    int64_t x = a, y = b;
    for (int i = 0; i < m_; ++i) {
        int64_t c = (x % p_ + y % p_) % p_;
        r += c * mul;
        mul *= p_;
        x /= p_;
        y /= p_;
    }
    return static_cast<int32_t>(r);
}

int32_t Field::sub(int32_t a, int32_t b) const { return add(a, neg(b)); }

int32_t Field::neg(int32_t a) const {
    int64_t r = 0, mul = 1;
    int64_t x = a;
    for (int i = 0; i < m_; ++i) {
        int64_t c = x % p_;
        r += (c ? p_ - c : 0) * mul;
        mul *= p_;
        x /= p_;
    }
    return static_cast<int32_t>(r);
}

int32_t Field::pow(int32_t a, int64_t e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return 1;
        throw DivisionByZero();
    }
    int64_t n = q_ - 1;
    int64_t ee = mod(log_[a] * mod(e, n), n);
    return exp_[ee];
}

int32_t Field::frobenius(int32_t a, int64_t i) const {
    if (a == 0) return 0;
    int64_t n = q_ - 1;
    int64_t pi = 1;
    for (int64_t k = 0; k < mod(i, m_); ++k) pi = pi * p_ % n;
    return exp_[log_[a] * pi % n];
}

std::vector<int64_t> Field::coeffs(int32_t a) const {
    std::vector<int64_t> c(m_, 0);
    int64_t x = a;
    for (int i = 0; i < m_; ++i) {
        c[i] = x % p_;
        x /= p_;
    }
    return c;
}

int32_t Field::pack(const std::vector<int64_t>& c) const {
    if (c.size() > static_cast<size_t>(m_))
        throw std::invalid_argument("coefficient tuple longer than degree");
    int64_t a = 0;
    for (size_t i = c.size(); i-- > 0;) a = a * p_ + mod(c[i], p_);
    return static_cast<int32_t>(a);
}

FieldPtr field_make(int64_t p, int m) {
    static std::map<std::pair<int64_t, int>, FieldPtr> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto F = std::make_shared<const Field>(p, m);
    cache[key] = F;
    return F;
}

int32_t embed(int32_t a, const Field& from, const Field& to) {
    if (from.p() != to.p() || to.m() % from.m() != 0)
        throw FieldMismatch("no subfield embedding GF(" + std::to_string(from.q()) + ") -> GF(" + std::to_string(to.q()) + ")");
    if (from.same(to)) return a;
    if (a == 0) return 0;
    int64_t scale = (to.q() - 1) / (from.q() - 1);
    return to.from_dlog(from.dlog(a) * scale);
}

} // namespace bk

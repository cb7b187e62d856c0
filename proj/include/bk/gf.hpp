#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "bk/errors.hpp"

namespace bk {

// GF(p^m) in polynomial basis, p an odd prime >= 5, with full log/antilog
// tables (the fields in play are tiny, q = p^m stays in the ten-thousands).
//
// Elements are packed integers c0 + c1*p + ... + c_{m-1}*p^{m-1} where the
// c_i are the coefficients of the residue polynomial, constant term first.
// Zero is packed 0 and has no discrete log.
class Field {
public:
    // Deterministic field: the modulus is the monic irreducible of degree m
    // whose coefficient tuple (constant term first) is lexicographically
    // least, and the generator is the least primitive element in the same
    // coefficient order.
    Field(int64_t p, int m);

    // Explicit monic modulus, constant term first, length m+1, leading
    // coefficient 1.  Rejected if reducible over GF(p).
    Field(int64_t p, std::vector<int64_t> modulus);

    int64_t p() const { return p_; }
    int m() const { return m_; }
    int64_t q() const { return q_; }
    const std::vector<int64_t>& modulus() const { return modulus_; }
    int32_t generator() const { return gen_; }

    bool same(const Field& other) const {
        return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
    }

    // Packed-element arithmetic.  No field tagging here; callers in inner
    // loops guarantee elements belong to this field.
    int32_t add(int32_t a, int32_t b) const;
    int32_t sub(int32_t a, int32_t b) const;
    int32_t neg(int32_t a) const;
    int32_t mul(int32_t a, int32_t b) const {
        if (a == 0 || b == 0) return 0;
        int64_t e = log_[a] + log_[b];
        if (e >= q_ - 1) e -= q_ - 1;
        return exp_[e];
    }
    int32_t inv(int32_t a) const {
        if (a == 0) throw DivisionByZero();
        int64_t e = log_[a];
        return exp_[e == 0 ? 0 : q_ - 1 - e];
    }
    int32_t div(int32_t a, int32_t b) const { return mul(a, inv(b)); }

    // x^e for any integer e; negative exponents invert, 0^0 = 1.
    int32_t pow(int32_t a, int64_t e) const;

    int64_t dlog(int32_t a) const {
        if (a == 0) throw DlogOfZero();
        return log_[a];
    }
    int32_t from_dlog(int64_t e) const {
        int64_t n = q_ - 1;
        e %= n;
        if (e < 0) e += n;
        return exp_[e];
    }

    // Image of the residue class of the integer v.
    int32_t from_int(int64_t v) const {
        int64_t c = v % p_;
        if (c < 0) c += p_;
        return static_cast<int32_t>(c);
    }
    int32_t one() const { return 1; }

    // x |-> x^{p^i}, the i-th power of the arithmetic Frobenius.
    int32_t frobenius(int32_t a, int64_t i) const;

    // Coefficient tuple of a packed element, constant term first, length m.
    std::vector<int64_t> coeffs(int32_t a) const;
    int32_t pack(const std::vector<int64_t>& c) const;

private:
    int64_t p_;
    int m_;
    int64_t q_;
    std::vector<int64_t> modulus_;
    int32_t gen_ = 0;
    std::vector<int32_t> exp_; // exp_[e] = packed g^e, e in [0, q-2]
    std::vector<int32_t> log_; // log_[packed] = e, log_[0] = -1

    void build_tables();
};

using FieldPtr = std::shared_ptr<const Field>;

// Memoized constructor for the deterministic field GF(p^m).
FieldPtr field_make(int64_t p, int m);

// Subfield embedding GF(p^a) -> GF(p^b) along dlog scaling by
// (p^b - 1)/(p^a - 1); requires the same p and a | b.
int32_t embed(int32_t a, const Field& from, const Field& to);

// An element tagged with its field, for API-boundary safety.
struct Fq {
    FieldPtr F;
    int32_t rep = 0;

    Fq() = default;
    Fq(FieldPtr f, int32_t r) : F(std::move(f)), rep(r) {}

    bool zero() const { return rep == 0; }

    friend Fq operator+(const Fq& a, const Fq& b) {
        a.check(b);
        return {a.F, a.F->add(a.rep, b.rep)};
    }
    friend Fq operator-(const Fq& a, const Fq& b) {
        a.check(b);
        return {a.F, a.F->sub(a.rep, b.rep)};
    }
    friend Fq operator*(const Fq& a, const Fq& b) {
        a.check(b);
        return {a.F, a.F->mul(a.rep, b.rep)};
    }
    friend Fq operator/(const Fq& a, const Fq& b) {
        a.check(b);
        return {a.F, a.F->div(a.rep, b.rep)};
    }
    friend bool operator==(const Fq& a, const Fq& b) {
        a.check(b);
        return a.rep == b.rep;
    }
    friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

    void check(const Fq& other) const {
        if (!F || !other.F || !F->same(*other.F))
            throw FieldMismatch("elements from different fields");
    }
};

} // namespace bk

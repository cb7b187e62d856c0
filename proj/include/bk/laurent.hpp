#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bk/gf.hpp"

namespace bk {

// Laurent series over a small finite field with explicit precision
// tracking.  A series stores a dense coefficient window
//
//     x = sum_j c[j] * v^{val+j},        j = 0 .. c.size()-1,
//
// and a bound prec: every exponent below prec is exactly known (exponents
// outside the stored window are zero), nothing is known at exponents
// >= prec.  prec == kExactPrec marks an exact Laurent polynomial.
//
// Stored windows keep c.front() != 0 and c.back() != 0; the zero-on-its-
// window series has an empty coefficient vector.
class Series {
public:
    static constexpr int64_t kExactPrec = INT64_MAX;

    Series() = default;

    static Series zero(FieldPtr F) { return Series(std::move(F), 0, {}, kExactPrec); }
    static Series zero_to(FieldPtr F, int64_t prec) { return Series(std::move(F), 0, {}, prec); }
    static Series monomial(FieldPtr F, int32_t c, int64_t e, int64_t prec = kExactPrec);
    static Series make(FieldPtr F, int64_t val, std::vector<int32_t> coeffs,
                       int64_t prec = kExactPrec);
    static Series one(FieldPtr F) { return monomial(std::move(F), 1, 0); }

    const FieldPtr& field() const { return F_; }
    bool exact() const { return prec_ == kExactPrec; }
    int64_t prec() const { return prec_; }
    bool known_zero() const { return c_.empty(); }
    bool exact_zero() const { return c_.empty() && exact(); }

    // Valuation of a nonzero series.  A series that is zero on its whole
    // known window cannot answer: exactly zero input is a domain error,
    // undetermined input raises PrecisionExhausted.
    int64_t val() const;
    std::pair<int64_t, int32_t> lowest_term() const;

    // Coefficient of v^e; raises PrecisionExhausted for e >= prec.
    int32_t coeff(int64_t e) const;

    // Number of nonzero stored coefficients.
    size_t terms() const;
    int64_t window_start() const { return val_; }
    int64_t window_end() const { return val_ + static_cast<int64_t>(c_.size()); }
    const std::vector<int32_t>& window() const { return c_; }

    Series truncated(int64_t new_prec) const;

    std::string str() const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator-(const Series& a);
    friend Series operator*(const Series& a, const Series& b);
    friend bool operator==(const Series& a, const Series& b);
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // Multiply by the monomial c * v^e.
    Series scaled(int32_t c, int64_t e = 0) const;

private:
    Series(FieldPtr F, int64_t val, std::vector<int32_t> c, int64_t prec)
        : F_(std::move(F)), val_(val), prec_(prec), c_(std::move(c)) {}

    void normalize();

    FieldPtr F_;
    int64_t val_ = 0;
    int64_t prec_ = kExactPrec;
    std::vector<int32_t> c_;

    friend Series series_div(const Series& a, const Series& b, int64_t window);
    friend Series phi_sub(const Series& x, int64_t i);
};

// a / b by long division.  The quotient is computed on a window of at most
// `window` exponents above its valuation; exact inputs yield exactly that
// window, inexact inputs are capped by what their precision supports.
// Cost is O(window * terms(b)), so sparse divisors stay cheap.
Series series_div(const Series& a, const Series& b, int64_t window);

inline Series series_inv(const Series& a, int64_t window) {
    return series_div(Series::one(a.field()), a, window);
}

// Substitution v |-> v^{p^i}: sum a_j v^j |-> sum a_j v^{j p^i}, the
// coefficients untouched.  Only exponents move, so exact input stays
// exact and a finite precision bound scales by p^i.
Series phi_sub(const Series& x, int64_t i);

// Dual-number series x = body + eps * tan with eps^2 = 0.
struct Dual {
    Series body;
    Series tan;

    static Dual from(Series b) {
        Series z = Series::zero(b.field());
        return {std::move(b), std::move(z)};
    }
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator*(const Dual& a, const Dual& b);
Dual dual_div(const Dual& a, const Dual& b, int64_t window);
Dual phi_sub(const Dual& x, int64_t i);

} // namespace bk

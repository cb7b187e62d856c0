#include "bk/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace bk {

namespace {

// Hard cap on stored window lengths; anything larger indicates a runaway
// computation rather than a legitimate request.
constexpr int64_t kMaxWindow = int64_t(1) << 24;

void check_window(int64_t len) {
    if (len < 0 || len > kMaxWindow)
        throw std::length_error("series window too large: " + std::to_string(len));
}

int64_t support_lower_bound(const Series& x) {
    // First exponent at which x may be nonzero.
    return x.known_zero() ? x.prec() : x.val();
}

} // namespace

Series Series::monomial(FieldPtr F, int32_t c, int64_t e, int64_t prec) {
    if (c == 0 || e >= prec) return Series(std::move(F), 0, {}, prec);
    return Series(std::move(F), e, {c}, prec);
}

Series Series::make(FieldPtr F, int64_t val, std::vector<int32_t> coeffs, int64_t prec) {
    Series s(std::move(F), val, std::move(coeffs), prec);
    s.normalize();
    return s;
}

void Series::normalize() {
    if (prec_ != kExactPrec) {
        int64_t over = val_ + static_cast<int64_t>(c_.size()) - prec_;
        if (over > 0) c_.resize(c_.size() - std::min<int64_t>(over, c_.size()));
    }
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead) {
        c_.erase(c_.begin(), c_.begin() + lead);
        val_ += static_cast<int64_t>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) val_ = 0;
}

int64_t Series::val() const {
    if (!c_.empty()) return val_;
    if (exact()) throw std::domain_error("valuation of the zero series");
    throw PrecisionExhausted("valuation undetermined below O(v^" + std::to_string(prec_) + ")");
}

std::pair<int64_t, int32_t> Series::lowest_term() const {
    int64_t v = val();
    return {v, c_.front()};
}

int32_t Series::coeff(int64_t e) const {
    if (e >= prec_)
        throw PrecisionExhausted("coefficient of v^" + std::to_string(e) +
                                 " beyond O(v^" + std::to_string(prec_) + ")");
    if (c_.empty() || e < val_ || e >= window_end()) return 0;
    return c_[e - val_];
}

size_t Series::terms() const {
    size_t n = 0;
    for (int32_t c : c_)
        if (c != 0) ++n;
    return n;
}

Series Series::truncated(int64_t new_prec) const {
    if (new_prec >= prec_) return *this;
    Series s(F_, val_, c_, new_prec);
    s.normalize();
    return s;
}

Series Series::scaled(int32_t c, int64_t e) const {
    if (c == 0) return Series::zero(F_);
    Series s(F_, val_ + e, c_, exact() ? kExactPrec : prec_ + e);
    if (c != 1)
        for (auto& x : s.c_) x = F_->mul(x, c);
    return s;
}

Series operator+(const Series& a, const Series& b) {
    if (!a.F_ || !b.F_ || !a.F_->same(*b.F_))
        throw FieldMismatch("series over different fields");
    const Field& F = *a.F_;
    int64_t prec = std::min(a.prec_, b.prec_);
    if (a.known_zero() && b.known_zero()) return Series::zero_to(a.F_, prec);
    int64_t lo = std::min(a.c_.empty() ? b.val_ : a.val_, b.c_.empty() ? a.val_ : b.val_);
    int64_t hi = std::max(a.window_end(), b.window_end());
    if (prec != Series::kExactPrec) hi = std::min(hi, prec);
    if (hi <= lo) return Series::zero_to(a.F_, prec);
    check_window(hi - lo);
    std::vector<int32_t> c(hi - lo, 0);
    for (int64_t e = a.val_; e < a.window_end() && e < hi; ++e)
        if (e >= lo) c[e - lo] = a.c_[e - a.val_];
    for (int64_t e = b.val_; e < b.window_end() && e < hi; ++e)
        if (e >= lo) c[e - lo] = F.add(c[e - lo], b.c_[e - b.val_]);
    return Series::make(a.F_, lo, std::move(c), prec);
}

Series operator-(const Series& a) {
    Series s = a;
    for (auto& x : s.c_) x = s.F_->neg(x);
    return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    if (!a.F_ || !b.F_ || !a.F_->same(*b.F_))
        throw FieldMismatch("series over different fields");
    const Field& F = *a.F_;
    if (a.exact_zero() || b.exact_zero()) return Series::zero(a.F_);

    int64_t prec = Series::kExactPrec;
    if (b.prec_ != Series::kExactPrec) prec = b.prec_ + support_lower_bound(a);
    if (a.prec_ != Series::kExactPrec)
        prec = std::min(prec, a.prec_ + support_lower_bound(b));
    if (a.known_zero() || b.known_zero()) return Series::zero_to(a.F_, prec);

    int64_t lo = a.val_ + b.val_;
    int64_t hi = a.window_end() + b.window_end() - 1;
    if (prec != Series::kExactPrec) hi = std::min(hi, prec);
    if (hi <= lo) return Series::zero_to(a.F_, prec);
    check_window(hi - lo);
    std::vector<int32_t> c(hi - lo, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        int64_t base = a.val_ + static_cast<int64_t>(i) + b.val_ - lo;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            int64_t k = base + static_cast<int64_t>(j);
            if (k >= hi - lo) break;
            c[k] = F.add(c[k], F.mul(a.c_[i], b.c_[j]));
        }
    }
    return Series::make(a.F_, lo, std::move(c), prec);
}

bool operator==(const Series& a, const Series& b) {
    if (!a.F_ || !b.F_ || !a.F_->same(*b.F_))
        throw FieldMismatch("series over different fields");
    return a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
}

Series series_div(const Series& a, const Series& b, int64_t window) {
    if (!a.F_ || !b.F_ || !a.F_->same(*b.F_))
        throw FieldMismatch("series over different fields");
    if (window < 1) throw std::invalid_argument("division window must be positive");
    const Field& F = *a.F_;
    if (b.known_zero()) {
        if (b.exact()) throw DivisionByZero();
        throw PrecisionExhausted("dividing by a series with no known nonzero coefficient");
    }
    if (a.exact_zero()) return Series::zero(a.F_);

    const int64_t vb = b.val_;
    const int32_t lead_inv = F.inv(b.c_.front());

    // Quotient valuation bound and attainable precision.
    int64_t vq = support_lower_bound(a) - vb;
    int64_t prec = Series::kExactPrec;
    if (a.prec_ != Series::kExactPrec) prec = a.prec_ - vb;
    if (b.prec_ != Series::kExactPrec)
        prec = std::min(prec, support_lower_bound(a) - 2 * vb + b.prec_);
    prec = std::min(prec, vq + window);
    if (prec <= vq) {
        if (a.known_zero()) return Series::zero_to(a.F_, prec);
        throw PrecisionExhausted("division leaves an empty quotient window");
    }
    check_window(prec - vq);

    // Long division: remainder r tracked on [vq+vb, prec+vb).
    const int64_t rlo = vq + vb;
    const int64_t rlen = prec - vq;
    std::vector<int32_t> r(rlen, 0);
    for (int64_t e = a.val_; e < a.window_end(); ++e) {
        int64_t k = e - rlo;
        if (k >= 0 && k < rlen) r[k] = a.c_[e - a.val_];
    }
    // nonzero positions of b relative to its valuation
    std::vector<std::pair<int64_t, int32_t>> bt;
    for (size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) bt.emplace_back(static_cast<int64_t>(j), b.c_[j]);

    std::vector<int32_t> q(rlen, 0);
    for (int64_t n = 0; n < rlen; ++n) {
        int32_t c = r[n];
        if (c == 0) continue;
        int32_t qc = F.mul(c, lead_inv);
        q[n] = qc;
        for (const auto& [off, bc] : bt) {
            int64_t k = n + off;
            if (k >= rlen) break;
            r[k] = F.sub(r[k], F.mul(qc, bc));
        }
    }
    return Series::make(a.F_, vq, std::move(q), prec);
}

Series phi_sub(const Series& x, int64_t i) {
    if (i < 0) throw std::invalid_argument("phi_sub needs i >= 0");
    int64_t s = 1;
    for (int64_t k = 0; k < i; ++k) {
        s *= x.F_->p();
        if (s > kMaxWindow) throw std::length_error("phi_sub exponent scale too large");
    }
    if (s == 1) return x;
    int64_t prec = x.exact() ? Series::kExactPrec : x.prec_ * s;
    if (x.known_zero()) return Series::zero_to(x.F_, prec);
    check_window((static_cast<int64_t>(x.c_.size()) - 1) * s + 1);
    std::vector<int32_t> c((x.c_.size() - 1) * s + 1, 0);
    for (size_t j = 0; j < x.c_.size(); ++j) c[j * s] = x.c_[j];
    return Series::make(x.F_, x.val_ * s, std::move(c), prec);
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!first) os << " + ";
        os << c_[j] << "*v^" << (val_ + static_cast<int64_t>(j));
        first = false;
    }
    if (first) os << "0";
    if (!exact()) os << " + O(v^" << prec_ << ")";
    return os.str();
}

Dual operator+(const Dual& a, const Dual& b) { return {a.body + b.body, a.tan + b.tan}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.body - b.body, a.tan - b.tan}; }

Dual operator*(const Dual& a, const Dual& b) {
    return {a.body * b.body, a.body * b.tan + a.tan * b.body};
}

Dual dual_div(const Dual& a, const Dual& b, int64_t window) {
    Series q = series_div(a.body, b.body, window);
    // (x + eps y)/(u + eps w) = x/u + eps (y - (x/u) w)/u
    Series t = series_div(a.tan - q * b.tan, b.body, window);
    return {std::move(q), std::move(t)};
}

Dual phi_sub(const Dual& x, int64_t i) { return {phi_sub(x.body, i), phi_sub(x.tan, i)}; }

} // namespace bk

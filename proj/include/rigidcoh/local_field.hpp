#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rigidcoh/root_datum.hpp"

namespace rigidcoh {

/// Terms kept when an exact series has to be inverted.
inline constexpr std::size_t default_precision = 32;

/// An element of 𝔽_p((t)): Σ cᵢ t^{start+i}, either exact (a Laurent
/// polynomial) or known modulo t^{abs_prec}. Nonzero coefficient lists start
/// with a nonzero entry.
class LaurentSeries {
public:
    LaurentSeries() = default;

    /// Σ coeffs[i] t^{start+i}; exact unless a relative precision is given.
    static LaurentSeries from_coefficients(std::uint64_t p, long start, const std::vector<long long>& coeffs,
                                           std::optional<std::size_t> precision = std::nullopt) {
        check_prime(p);
        LaurentSeries s;
        s.p_ = p;
        s.start_ = start;
        for (auto c : coeffs) s.c_.push_back(reduce(c, p));
        if (precision) {
            s.exact_ = false;
            s.abs_prec_ = start + static_cast<long>(*precision);
        }
        s.normalize();
        return s;
    }

    static LaurentSeries constant(std::uint64_t p, long long a) { return from_coefficients(p, 0, {a}); }
    static LaurentSeries monomial(std::uint64_t p, long k, long long a = 1) { return from_coefficients(p, k, {a}); }
    static LaurentSeries zero(std::uint64_t p) { return from_coefficients(p, 0, {}); }

    std::uint64_t p() const noexcept { return p_; }
    bool is_exact() const noexcept { return exact_; }
    /// Valid only when not exact.
    long absolute_precision() const noexcept { return abs_prec_; }
    bool has_known_valuation() const noexcept { return !c_.empty(); }
    bool is_exact_zero() const noexcept { return exact_ && c_.empty(); }
    bool is_zero_within_precision() const noexcept { return !exact_ && c_.empty(); }
    long lead_exponent() const noexcept { return start_; }
    const std::vector<std::uint64_t>& coefficients() const noexcept { return c_; }
    /// Known terms counted from the lead exponent.
    std::size_t relative_precision() const {
        return exact_ ? std::size_t(-1) : static_cast<std::size_t>(abs_prec_ - start_);
    }

    /// Coefficient of t^k (0 outside the stored range).
    std::uint64_t coefficient(long k) const {
        if (k < start_ || k >= start_ + static_cast<long>(c_.size())) return 0;
        return c_[static_cast<std::size_t>(k - start_)];
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, 1); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return combine(a, b, -1); }
    friend LaurentSeries operator-(const LaurentSeries& a) { return combine(zero(a.p_), a, -1); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        same_field(a, b);
        LaurentSeries r;
        r.p_ = a.p_;
        if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.p_);
        // Lower bound for the valuation of each operand.
        const long va = a.c_.empty() ? a.abs_prec_ : a.start_;
        const long vb = b.c_.empty() ? b.abs_prec_ : b.start_;
        r.exact_ = a.exact_ && b.exact_;
        if (!r.exact_) {
            long bound = std::numeric_limits<long>::max();
            if (!a.exact_) bound = std::min(bound, a.abs_prec_ + vb);
            if (!b.exact_) bound = std::min(bound, b.abs_prec_ + va);
            r.abs_prec_ = bound;
        }
        r.start_ = a.start_ + b.start_;
        if (!a.c_.empty() && !b.c_.empty()) {
            std::size_t len = a.c_.size() + b.c_.size() - 1;
            if (!r.exact_) len = std::min<std::size_t>(len, static_cast<std::size_t>(std::max(0L, r.abs_prec_ - r.start_)));
            r.c_.assign(len, 0);
            for (std::size_t i = 0; i < a.c_.size() && i < len; ++i)
                for (std::size_t j = 0; j < b.c_.size() && i + j < len; ++j)
                    r.c_[i + j] = (r.c_[i + j] + mulmod(a.c_[i], b.c_[j], r.p_)) % r.p_;
        }
        r.normalize();
        return r;
    }

    /// 1/x; exact operands are expanded to `precision` terms.
    LaurentSeries inverse(std::size_t precision = default_precision) const {
        require(!c_.empty(), ErrorCode::ZeroWithinPrecision, "cannot invert a series that is zero within precision");
        const std::size_t n = exact_ ? precision : relative_precision();
        // u = c₀(1 + …); invert coefficientwise.
        std::vector<std::uint64_t> inv(n, 0);
        const std::uint64_t c0inv = powmod(c_[0], p_ - 2, p_);
        for (std::size_t k = 0; k < n; ++k) {
            std::uint64_t s = k == 0 ? 1 : 0;
            for (std::size_t j = 1; j <= k && j < c_.size(); ++j) s = (s + p_ - mulmod(c_[j], inv[k - j], p_)) % p_;
            inv[k] = mulmod(s, c0inv, p_);
        }
        LaurentSeries r;
        r.p_ = p_;
        r.start_ = -start_;
        r.c_ = std::move(inv);
        r.exact_ = false;
        r.abs_prec_ = -start_ + static_cast<long>(n);
        r.normalize();
        return r;
    }

    LaurentSeries pow(long e, std::size_t precision = default_precision) const {
        if (e < 0) return inverse(precision).pow(-e, precision);
        LaurentSeries result = constant(p_, 1), base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return result;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += std::to_string(c_[i]) + "·t^" + std::to_string(start_ + static_cast<long>(i));
        }
        if (out.empty()) out = "0";
        if (!exact_) out += " + O(t^" + std::to_string(abs_prec_) + ")";
        return out;
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.p_ == b.p_ && a.exact_ == b.exact_ && a.c_ == b.c_ && (a.c_.empty() || a.start_ == b.start_) &&
               (a.exact_ || a.abs_prec_ == b.abs_prec_);
    }

private:
    static void check_prime(std::uint64_t p) {
        bool prime = p >= 2;
        for (std::uint64_t d = 2; prime && d * d <= p; ++d)
            if (p % d == 0) prime = false;
        require(prime && p < (1ULL << 31), ErrorCode::InvalidArgument, "characteristic must be a prime below 2³¹");
    }

    static void same_field(const LaurentSeries& a, const LaurentSeries& b) {
        require(a.p_ == b.p_, ErrorCode::InvalidArgument, "series over different prime fields");
    }

    static std::uint64_t reduce(long long c, std::uint64_t p) {
        long long m = c % static_cast<long long>(p);
        return static_cast<std::uint64_t>(m < 0 ? m + static_cast<long long>(p) : m);
    }
    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }
    static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mulmod(r, a, p);
            a = mulmod(a, a, p);
            e >>= 1;
        }
        return r;
    }

    static LaurentSeries combine(const LaurentSeries& a, const LaurentSeries& b, int sign) {
        same_field(a, b);
        LaurentSeries r;
        r.p_ = a.p_;
        r.exact_ = a.exact_ && b.exact_;
        if (!r.exact_)
            r.abs_prec_ = std::min(a.exact_ ? std::numeric_limits<long>::max() : a.abs_prec_,
                                   b.exact_ ? std::numeric_limits<long>::max() : b.abs_prec_);
        long lo = std::numeric_limits<long>::max(), hi = std::numeric_limits<long>::min();
        for (const auto* x : {&a, &b})
            if (!x->c_.empty()) {
                lo = std::min(lo, x->start_);
                hi = std::max(hi, x->start_ + static_cast<long>(x->c_.size()));
            }
        if (lo > hi) {
            r.normalize();
            return r;
        }
        if (!r.exact_) hi = std::min(hi, r.abs_prec_);
        r.start_ = lo;
        for (long k = lo; k < hi; ++k) {
            std::uint64_t bk = b.coefficient(k);
            if (sign < 0 && bk) bk = r.p_ - bk;
            r.c_.push_back((a.coefficient(k) + bk) % r.p_);
        }
        r.normalize();
        return r;
    }

    void normalize() {
        if (!exact_ && start_ + static_cast<long>(c_.size()) > abs_prec_)
            c_.resize(static_cast<std::size_t>(std::max(0L, abs_prec_ - start_)));
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        start_ += static_cast<long>(lead);
        if (exact_)
            while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) start_ = 0;
    }

    std::uint64_t p_ = 2;
    long start_ = 0;
    std::vector<std::uint64_t> c_;
    bool exact_ = true;
    long abs_prec_ = 0;
};

/// base^exponent with a rational exponent in lowest terms.
struct ValuedNumber {
    Integer base = 1;
    Rational exponent = 0;

    ValuedNumber() = default;
    ValuedNumber(Integer b, Rational e) : base(std::move(b)), exponent(std::move(e)) { exponent.canonicalize(); }

    std::string to_string() const { return base.get_str() + "^" + exponent.get_str(); }

    friend ValuedNumber operator*(const ValuedNumber& a, const ValuedNumber& b) {
        if (a.exponent == 0) return b;
        if (b.exponent == 0) return a;
        require(a.base == b.base, ErrorCode::InvalidArgument, "product of powers of different bases");
        return ValuedNumber(a.base, a.exponent + b.exponent);
    }
    friend bool operator==(const ValuedNumber& a, const ValuedNumber& b) {
        if (a.exponent == 0 && b.exponent == 0) return true;
        return a.base == b.base && a.exponent == b.exponent;
    }
};

inline long valuation(const LaurentSeries& x) {
    require(x.has_known_valuation(), ErrorCode::ZeroWithinPrecision,
            x.is_exact_zero() ? "valuation of zero" : "all known coefficients vanish");
    return x.lead_exponent();
}

/// |x| = p^{−v(x)}.
inline ValuedNumber abs_value(const LaurentSeries& x) { return ValuedNumber(Integer(x.p()), Rational(-valuation(x))); }

/// Π γᵢ^{χᵢ} for a character χ of a split torus with coordinates γ.
inline LaurentSeries evaluate_character(std::span<const Integer> chi, const std::vector<LaurentSeries>& gamma,
                                        std::size_t precision = default_precision) {
    require(chi.size() == gamma.size() && !gamma.empty(), ErrorCode::DimensionMismatch,
            "character and torus element have different ranks");
    LaurentSeries r = LaurentSeries::constant(gamma[0].p(), 1);
    for (std::size_t i = 0; i < chi.size(); ++i)
        if (chi[i] != 0) r = r * gamma[i].pow(chi[i].get_si(), precision);
    return r;
}

/// w·γ for w acting on Y: (wγ)ᵢ = Π_j γ_j^{w_ij}.
inline std::vector<LaurentSeries> act_on_torus(const IntMatrix& w, const std::vector<LaurentSeries>& gamma,
                                               std::size_t precision = default_precision) {
    std::vector<LaurentSeries> out;
    for (std::size_t i = 0; i < w.rows(); ++i) out.push_back(evaluate_character(w.row(i), gamma, precision));
    return out;
}

namespace detail {

inline void require_split(const RootDatum& rd) {
    for (const auto& a : rd.y_lattice().actions())
        require(a == IntMatrix::identity(rd.rank()), ErrorCode::InvalidArgument, "root datum is not split");
}

inline void require_units(const std::vector<LaurentSeries>& gamma, std::size_t rank) {
    require(gamma.size() == rank, ErrorCode::DimensionMismatch, "need one coordinate per cocharacter basis vector");
    for (const auto& g : gamma)
        require(g.has_known_valuation(), ErrorCode::ZeroWithinPrecision, "torus coordinate is zero");
}

/// α(γ) − 1, with exact zero reported as nullopt.
inline std::optional<LaurentSeries> root_minus_one(std::span<const Integer> alpha, const std::vector<LaurentSeries>& gamma,
                                                   std::size_t precision) {
    LaurentSeries d = evaluate_character(alpha, gamma, precision) - LaurentSeries::constant(gamma[0].p(), 1);
    if (d.is_exact_zero()) return std::nullopt;
    require(!d.is_zero_within_precision(), ErrorCode::PrecisionInsufficient,
            "α(γ) − 1 vanishes to the working precision");
    return d;
}

} // namespace detail

/// α(γ) ≠ 1 for every root α.
inline bool is_strongly_regular(const RootDatum& rd, const std::vector<LaurentSeries>& gamma,
                                std::size_t precision = default_precision) {
    detail::require_split(rd);
    detail::require_units(gamma, rd.rank());
    for (const auto& a : rd.roots())
        if (!detail::root_minus_one(a, gamma, precision)) return false;
    return true;
}

/// Σ_{α ∈ R} v(α(γ) − 1).
inline long discriminant_valuation(const RootDatum& rd, const std::vector<LaurentSeries>& gamma,
                                   std::size_t precision = default_precision) {
    long v = 0;
    for (const auto& a : rd.roots()) {
        auto d = detail::root_minus_one(a, gamma, precision);
        require(d.has_value(), ErrorCode::InvalidArgument, "element is not strongly regular");
        v += valuation(*d);
    }
    return v;
}

/// Δ_IV = p^{−(v_G − v_H)/2}.
inline ValuedNumber delta_IV(const RootDatum& g, const RootDatum& h, const std::vector<LaurentSeries>& gamma,
                             std::size_t precision = default_precision) {
    detail::require_split(g);
    detail::require_units(gamma, g.rank());
    require(h.rank() == g.rank(), ErrorCode::DimensionMismatch, "H and G live on different tori");
    for (const auto& a : h.roots())
        require(g.find_root(a) != RootDatum::npos, ErrorCode::InvalidArgument, "a root of H is not a root of G");
    require(is_strongly_regular(g, gamma, precision), ErrorCode::InvalidArgument, "element is not strongly regular");
    long vg = discriminant_valuation(g, gamma, precision);
    long vh = discriminant_valuation(h, gamma, precision);
    return ValuedNumber(Integer(gamma[0].p()), Rational(-(vg - vh), 2));
}

} // namespace rigidcoh

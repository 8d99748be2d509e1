#pragma once

#include <string>
#include <string_view>

#include "rigidcoh/int_matrix.hpp"

namespace rigidcoh {

/// An element of ℚ/ℤ, stored as a reduced fraction in [0, 1).
class QModZ {
public:
    QModZ() = default;
    QModZ(const Integer& num, const Integer& den) { assign(Rational(num, den)); }
    explicit QModZ(const Rational& q) { assign(q); }

    /// Parses "a/b" or "a".
    static QModZ parse(std::string_view text) {
        std::string s(text);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return QModZ(Integer(s), Integer(1));
            Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
            require(den != 0, ErrorCode::InvalidArgument, "zero denominator in ℚ/ℤ value");
            return QModZ(num, den);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::InvalidArgument, "malformed ℚ/ℤ value '" + s + "'");
        }
    }

    const Integer& numerator() const noexcept { return num_; }
    const Integer& denominator() const noexcept { return den_; }
    const Rational& value() const noexcept { return value_; }
    bool is_zero() const noexcept { return num_ == 0; }

    /// Additive order in ℚ/ℤ.
    const Integer& order() const noexcept { return den_; }

    std::string to_string() const { return num_.get_str() + "/" + den_.get_str(); }

    friend QModZ operator+(const QModZ& a, const QModZ& b) { return QModZ(a.value_ + b.value_); }
    friend QModZ operator-(const QModZ& a, const QModZ& b) { return QModZ(a.value_ - b.value_); }
    friend QModZ operator-(const QModZ& a) { return QModZ(-a.value_); }
    friend QModZ operator*(const Integer& k, const QModZ& a) { return QModZ(Rational(k) * a.value_); }
    friend bool operator==(const QModZ& a, const QModZ& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    void assign(Rational q) {
        q.canonicalize();
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        value_ = q - Rational(fl);
        value_.canonicalize();
        num_ = value_.get_num();
        den_ = value_.get_den();
    }

    Rational value_ = 0;
    Integer num_ = 0;
    Integer den_ = 1;
};

} // namespace rigidcoh

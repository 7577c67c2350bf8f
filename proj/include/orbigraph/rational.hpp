#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace orbigraph {

using Int = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCoprime : Error {
    using Error::Error;
};
struct InvalidInput : Error {
    using Error::Error;
};

// Exact fraction, always in lowest terms with positive denominator.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}
    template <class U>
    Rational(const __gmp_expr<mpz_t, U>& e) : v_(Int(e)) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0)
            throw InvalidInput("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }

    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0)
            throw InvalidInput("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return v_ < 0 ? Rational(mpq_class(-v_)) : *this; }

    // "n/d", or just "n" when the value is an integer.
    std::string str() const {
        if (is_integer())
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

  private:
    mpq_class v_;
};

Int gcd(const Int& a, const Int& b);

// Solves x*a + y*b = gcd(|a|,|b|); returns the gcd.
Int extended_gcd(const Int& a, const Int& b, Int& x, Int& y);

// The unique l' with 1 <= l' < m and a*l' == 1 (mod m).  Requires m >= 2.
Int mod_inverse(const Int& a, const Int& m);

// Representative of a modulo m in [0, m).  Requires m >= 1.
Int mod_floor(const Int& a, const Int& m);

// Minus-sign continued fraction m0/m1 = c1 - 1/(c2 - 1/(... - 1/cn)).
// coefficients = (c1..cn), remainders = (m0, m1, ..., 1) with
// m_{i+2} = c_{i+1} m_{i+1} - m_i.
struct HJExpansion {
    std::vector<Int> coefficients;
    std::vector<Int> remainders;
};

HJExpansion hj_expand(const Int& m0, const Int& m1);

// Evaluates [c1,...,cn] as the nested minus-sign fraction.
Rational hj_eval(const std::vector<Int>& coefficients);

// Parses "a/b" or "a"; throws InvalidInput on malformed text.
Rational parse_rational(const std::string& text);

}  // namespace orbigraph

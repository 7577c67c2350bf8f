#include "orbigraph/rational.hpp"

namespace orbigraph {

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int extended_gcd(const Int& a, const Int& b, Int& x, Int& y) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int mod_inverse(const Int& a, const Int& m) {
    if (m < 2)
        throw InvalidInput("mod_inverse: modulus must be >= 2");
    if (gcd(a, m) != 1)
        throw NotCoprime("mod_inverse: gcd(" + a.get_str() + ", " + m.get_str() + ") != 1");
    Int r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_floor(const Int& a, const Int& m) {
    if (m < 1)
        throw InvalidInput("mod_floor: modulus must be >= 1");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

HJExpansion hj_expand(const Int& m0, const Int& m1) {
    if (!(m1 >= 1 && m1 < m0))
        throw InvalidInput("hj_expand: need 1 <= m1 < m0");
    if (gcd(m0, m1) != 1)
        throw InvalidInput("hj_expand: m0, m1 not coprime");
    HJExpansion e;
    e.remainders.push_back(m0);
    e.remainders.push_back(m1);
    Int a = m0, b = m1;
    while (b > 1) {
        // smallest c with c*b - a in [0, b), i.e. c = ceil((a+1)/b) gives next in [1, b)
        Int c, next;
        mpz_cdiv_q(c.get_mpz_t(), Int(a + 1).get_mpz_t(), b.get_mpz_t());
        next = c * b - a;
        e.coefficients.push_back(c);
        e.remainders.push_back(next);
        a = b;
        b = next;
    }
    if (e.coefficients.empty()) {
        // m1 == 1: single step m0 = [m0]
        e.coefficients.push_back(m0);
    } else if (e.remainders.back() == 1 && a > 1) {
        // tail: m_{n-1} = c_n * 1, read with m_{n+1} = 0
        e.coefficients.push_back(a);
        // remainders already end at 1
    }
    return e;
}

Rational hj_eval(const std::vector<Int>& coefficients) {
    if (coefficients.empty())
        throw InvalidInput("hj_eval: empty coefficient list");
    Rational v(coefficients.back());
    for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it)
        v = Rational(*it) - Rational(Int(1)) / v;
    return v;
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0)
            throw InvalidInput("parse_rational: zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw InvalidInput("parse_rational: malformed rational '" + text + "'");
    }
}

}  // namespace orbigraph

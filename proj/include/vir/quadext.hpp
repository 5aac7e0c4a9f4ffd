#ifndef VIR_QUADEXT_HPP
#define VIR_QUADEXT_HPP

#include <string>
#include <utility>

#include "vir/errors.hpp"
#include "vir/rational.hpp"

namespace vir {

/* Splits n >= 1 as m*m*d with d square-free. */
inline std::pair<long, long> squarefree_split(long n) {
    long m = 1;
    long d = n;
    for (long k = 2; k * k <= d; ++k) {
        while (d % (k * k) == 0) {
            d /= k * k;
            m *= k;
        }
    }
    return {m, d};
}

/*
 * Element a + b*sqrt(d) of a real quadratic extension of the rationals.
 * d is kept square-free; square factors of the radicand fold into b at
 * construction, and d collapsing to 1 folds the whole value into a. That
 * keeps equality and is_rational() exact syntactic checks.
 */
class QuadExt {
public:
    QuadExt() : m_a(0), m_b(0), m_d(1) {}

    QuadExt(const Rational& a) : m_a(a), m_b(0), m_d(1) {}

    QuadExt(long a) : m_a(a), m_b(0), m_d(1) {}

    QuadExt(const Rational& a, const Rational& b, long d) : m_a(a), m_b(b), m_d(d) {
        if (d < 1) throw InvalidParameters("radicand must be positive");
        auto [m, d0] = squarefree_split(d);
        m_b *= m;
        m_d = d0;
        normalize();
    }

    static QuadExt sqrt_of(long n) {
        if (n < 0) throw InvalidParameters("radicand must be nonnegative");
        if (n == 0) return QuadExt();
        return QuadExt(rat(0), rat(1), n);
    }

    const Rational& a() const { return m_a; }
    const Rational& b() const { return m_b; }
    long d() const { return m_d; }

    bool is_rational() const { return m_b == 0; }
    bool is_zero() const { return m_a == 0 && m_b == 0; }

    Rational rational_part() const {
        if (!is_rational()) throw NotRational("value has a nonzero radical part");
        return m_a;
    }

    Rational norm() const { return m_a * m_a - m_b * m_b * m_d; }

    QuadExt operator-() const {
        QuadExt r;
        r.m_a = -m_a;
        r.m_b = -m_b;
        r.m_d = m_d;
        return r;
    }

    QuadExt& operator+=(const QuadExt& o) {
        long d = merged_d(o);
        m_a += o.m_a;
        m_b += o.m_b;
        m_d = d;
        normalize();
        return *this;
    }

    QuadExt& operator-=(const QuadExt& o) { return *this += -o; }

    QuadExt& operator*=(const QuadExt& o) {
        long d = merged_d(o);
        Rational a = m_a * o.m_a + m_b * o.m_b * d;
        Rational b = m_a * o.m_b + m_b * o.m_a;
        m_a = a;
        m_b = b;
        m_d = d;
        normalize();
        return *this;
    }

    QuadExt& operator/=(const QuadExt& o) {
        if (o.is_zero()) throw DivisionByZero("division by zero extension element");
        long d = merged_d(o);
        Rational n = o.m_a * o.m_a - o.m_b * o.m_b * d;
        /* conjugate over norm; norm vanishes only at zero since d is square-free */
        Rational a = (m_a * o.m_a - m_b * o.m_b * d) / n;
        Rational b = (m_b * o.m_a - m_a * o.m_b) / n;
        m_a = a;
        m_b = b;
        m_d = d;
        normalize();
        return *this;
    }

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.m_a == y.m_a && x.m_b == y.m_b && (x.m_b == 0 || x.m_d == y.m_d);
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    std::string str() const {
        if (is_rational()) return rat_str(m_a);
        return rat_str(m_a) + "+" + rat_str(m_b) + "*sqrt(" + std::to_string(m_d) + ")";
    }

private:
    void normalize() {
        if (m_d == 1) {
            m_a += m_b;
            m_b = 0;
        }
        if (m_b == 0) m_d = 1;
    }

    long merged_d(const QuadExt& o) const {
        if (m_b == 0) return o.m_d;
        if (o.m_b == 0) return m_d;
        if (m_d != o.m_d) throw InvalidParameters("mixed radicands in extension arithmetic");
        return m_d;
    }

    Rational m_a;
    Rational m_b;
    long m_d;
};

} // namespace vir

#endif

#ifndef VIR_MPREAL_HPP
#define VIR_MPREAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "vir/rational.hpp"

namespace vir {

/*
 * Thin RAII wrapper over mpfr_t with just the operations the closed-form
 * constants need. Precision is fixed per value; binary operations round
 * into the precision of the left operand.
 */
class MpReal {
public:
    explicit MpReal(long prec = 256) {
        mpfr_init2(m_x, static_cast<mpfr_prec_t>(prec));
        mpfr_set_ui(m_x, 0, MPFR_RNDN);
    }

    MpReal(const MpReal& o) {
        mpfr_init2(m_x, mpfr_get_prec(o.m_x));
        mpfr_set(m_x, o.m_x, MPFR_RNDN);
    }

    MpReal(MpReal&& o) noexcept {
        mpfr_init2(m_x, mpfr_get_prec(o.m_x));
        mpfr_swap(m_x, o.m_x);
    }

    MpReal& operator=(MpReal o) {
        mpfr_swap(m_x, o.m_x);
        return *this;
    }

    ~MpReal() { mpfr_clear(m_x); }

    static MpReal from_rational(const Rational& q, long prec) {
        MpReal r(prec);
        mpfr_set_q(r.m_x, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    static MpReal from_long(long n, long prec) {
        MpReal r(prec);
        mpfr_set_si(r.m_x, n, MPFR_RNDN);
        return r;
    }

    static MpReal pi(long prec) {
        MpReal r(prec);
        mpfr_const_pi(r.m_x, MPFR_RNDN);
        return r;
    }

    long precision() const { return static_cast<long>(mpfr_get_prec(m_x)); }

    friend MpReal operator+(const MpReal& a, const MpReal& b) {
        MpReal r(a.precision());
        mpfr_add(r.m_x, a.m_x, b.m_x, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(const MpReal& a, const MpReal& b) {
        MpReal r(a.precision());
        mpfr_sub(r.m_x, a.m_x, b.m_x, MPFR_RNDN);
        return r;
    }
    friend MpReal operator*(const MpReal& a, const MpReal& b) {
        MpReal r(a.precision());
        mpfr_mul(r.m_x, a.m_x, b.m_x, MPFR_RNDN);
        return r;
    }
    friend MpReal operator/(const MpReal& a, const MpReal& b) {
        MpReal r(a.precision());
        mpfr_div(r.m_x, a.m_x, b.m_x, MPFR_RNDN);
        return r;
    }

    MpReal cos() const {
        MpReal r(precision());
        mpfr_cos(r.m_x, m_x, MPFR_RNDN);
        return r;
    }

    MpReal gamma_fn() const {
        MpReal r(precision());
        mpfr_gamma(r.m_x, m_x, MPFR_RNDN);
        return r;
    }

    MpReal abs() const {
        MpReal r(precision());
        mpfr_abs(r.m_x, m_x, MPFR_RNDN);
        return r;
    }

    MpReal neg() const {
        MpReal r(precision());
        mpfr_neg(r.m_x, m_x, MPFR_RNDN);
        return r;
    }

    static MpReal factorial(unsigned long n, long prec) {
        MpReal r(prec);
        mpfr_fac_ui(r.m_x, n, MPFR_RNDN);
        return r;
    }

    /* |x| < 2^e */
    bool abs_below_pow2(long e) const {
        if (mpfr_zero_p(m_x)) return true;
        MpReal t = abs();
        mpfr_mul_2si(t.m_x, t.m_x, -e, MPFR_RNDN);
        return mpfr_cmp_ui(t.m_x, 1) < 0;
    }

    /* Fixed-count significant digits so identical inputs print identically. */
    std::string str(long digits = 70) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), m_x);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t m_x;
};

} // namespace vir

#endif

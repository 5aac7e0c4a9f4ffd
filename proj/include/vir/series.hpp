#ifndef VIR_SERIES_HPP
#define VIR_SERIES_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "vir/errors.hpp"
#include "vir/rational.hpp"

namespace vir {

/*
 * Power series in one named variable, truncated at a fixed order. Binary
 * operations refuse mismatched variable names and align to the smaller
 * order, since coefficients beyond it are not trustworthy on either side.
 */
class TruncatedSeries {
public:
    TruncatedSeries(std::string var, long order)
        : m_var(std::move(var)), m_coeffs(static_cast<size_t>(order + 1)) {
        if (order < 0) throw InvalidParameters("series order must be nonnegative");
    }

    TruncatedSeries(std::string var, std::vector<Rational> coeffs)
        : m_var(std::move(var)), m_coeffs(std::move(coeffs)) {
        if (m_coeffs.empty()) throw InvalidParameters("series needs at least the constant term");
    }

    const std::string& var() const { return m_var; }
    long order() const { return static_cast<long>(m_coeffs.size()) - 1; }

    const Rational& coeff(long k) const { return m_coeffs.at(static_cast<size_t>(k)); }
    void set_coeff(long k, const Rational& v) { m_coeffs.at(static_cast<size_t>(k)) = v; }

    bool is_zero() const {
        for (const auto& c : m_coeffs)
            if (c != 0) return false;
        return true;
    }

    TruncatedSeries truncate(long order) const {
        if (order >= this->order()) return *this;
        std::vector<Rational> c(m_coeffs.begin(), m_coeffs.begin() + order + 1);
        return TruncatedSeries(m_var, std::move(c));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& x, const TruncatedSeries& y) {
        long n = x.matched_order(y);
        TruncatedSeries r(x.m_var, n);
        for (long k = 0; k <= n; ++k) r.m_coeffs[k] = x.m_coeffs[k] + y.m_coeffs[k];
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& x, const TruncatedSeries& y) {
        long n = x.matched_order(y);
        TruncatedSeries r(x.m_var, n);
        for (long k = 0; k <= n; ++k) r.m_coeffs[k] = x.m_coeffs[k] - y.m_coeffs[k];
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& x, const TruncatedSeries& y) {
        long n = x.matched_order(y);
        TruncatedSeries r(x.m_var, n);
        for (long i = 0; i <= n; ++i) {
            if (x.m_coeffs[i] == 0) continue;
            for (long j = 0; i + j <= n; ++j)
                r.m_coeffs[i + j] += x.m_coeffs[i] * y.m_coeffs[j];
        }
        return r;
    }

    friend TruncatedSeries operator*(const Rational& s, const TruncatedSeries& x) {
        TruncatedSeries r = x;
        for (auto& c : r.m_coeffs) c *= s;
        return r;
    }

    TruncatedSeries derivative() const {
        if (order() == 0) return TruncatedSeries(m_var, std::vector<Rational>{Rational(0)});
        TruncatedSeries r(m_var, order() - 1);
        for (long k = 1; k <= order(); ++k) r.m_coeffs[k - 1] = rat(k) * m_coeffs[k];
        return r;
    }

private:
    long matched_order(const TruncatedSeries& o) const {
        if (m_var != o.m_var)
            throw VariableMismatch("series in " + m_var + " combined with series in " + o.m_var);
        return std::min(order(), o.order());
    }

    std::string m_var;
    std::vector<Rational> m_coeffs;
};

} // namespace vir

#endif

#ifndef VIR_LINALG_HPP
#define VIR_LINALG_HPP

#include <gmpxx.h>

#include <vector>

#include "vir/errors.hpp"
#include "vir/rational.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vir {

/*
 * Incremental exact row space in reduced echelon form (unit pivots). Unit
 * pivots cost divisions but give canonical residuals, which the span
 * membership tests and quotient-space reductions rely on.
 */
template <class T>
class SpanBuilder {
public:
    explicit SpanBuilder(long ncols) : m_ncols(ncols) {}

    long ncols() const { return m_ncols; }
    long rank() const { return static_cast<long>(m_rows.size()); }
    const std::vector<std::vector<T>>& rows() const { return m_rows; }
    const std::vector<long>& leads() const { return m_leads; }

    std::vector<T> residual(std::vector<T> v) const {
        for (size_t i = 0; i < m_rows.size(); ++i) {
            const T& x = v[static_cast<size_t>(m_leads[i])];
            if (x == T{}) continue;
            T f = x;
            for (long j = m_leads[i]; j < m_ncols; ++j)
                v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] - f * m_rows[i][static_cast<size_t>(j)];
        }
        return v;
    }

    bool contains(const std::vector<T>& v) const {
        auto r = residual(v);
        for (const auto& x : r)
            if (!(x == T{})) return false;
        return true;
    }

    /* Returns true when the vector enlarged the span. */
    bool insert(std::vector<T> v) {
        v = residual(std::move(v));
        long lead = -1;
        for (long j = 0; j < m_ncols; ++j) {
            if (!(v[static_cast<size_t>(j)] == T{})) {
                lead = j;
                break;
            }
        }
        if (lead < 0) return false;
        T piv = v[static_cast<size_t>(lead)];
        for (long j = lead; j < m_ncols; ++j)
            v[static_cast<size_t>(j)] = v[static_cast<size_t>(j)] / piv;
        for (size_t i = 0; i < m_rows.size(); ++i) {
            T f = m_rows[i][static_cast<size_t>(lead)];
            if (f == T{}) continue;
            for (long j = lead; j < m_ncols; ++j)
                m_rows[i][static_cast<size_t>(j)] =
                    m_rows[i][static_cast<size_t>(j)] - f * v[static_cast<size_t>(j)];
        }
        size_t at = 0;
        while (at < m_rows.size() && m_leads[at] < lead) ++at;
        m_rows.insert(m_rows.begin() + at, std::move(v));
        m_leads.insert(m_leads.begin() + at, lead);
        return true;
    }

private:
    long m_ncols;
    std::vector<std::vector<T>> m_rows;
    std::vector<long> m_leads;
};

/*
 * Kernel of the linear map whose constraint rows are given: all x with
 * rows * x = 0. Basis vectors are indexed by the free columns, each with a
 * unit entry there, so the result is canonical for a fixed row order.
 */
template <class T>
std::vector<std::vector<T>> kernel_basis(std::vector<std::vector<T>> rows, long ncols) {
    std::vector<long> pivot_col;
    std::vector<size_t> pivot_row;
    size_t next = 0;
    for (long c = 0; c < ncols && next < rows.size(); ++c) {
        size_t hit = rows.size();
        for (size_t i = next; i < rows.size(); ++i) {
            if (!(rows[i][static_cast<size_t>(c)] == T{})) {
                hit = i;
                break;
            }
        }
        if (hit == rows.size()) continue;
        std::swap(rows[next], rows[hit]);
        T piv = rows[next][static_cast<size_t>(c)];
        for (long j = c; j < ncols; ++j)
            rows[next][static_cast<size_t>(j)] = rows[next][static_cast<size_t>(j)] / piv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == next) continue;
            T f = rows[i][static_cast<size_t>(c)];
            if (f == T{}) continue;
            for (long j = c; j < ncols; ++j)
                rows[i][static_cast<size_t>(j)] =
                    rows[i][static_cast<size_t>(j)] - f * rows[next][static_cast<size_t>(j)];
        }
        pivot_col.push_back(c);
        pivot_row.push_back(next);
        ++next;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (long c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<T>> basis;
    for (long f = 0; f < ncols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<T> x(static_cast<size_t>(ncols));
        x[static_cast<size_t>(f)] = T{} + T(1);
        for (size_t k = 0; k < pivot_col.size(); ++k)
            x[static_cast<size_t>(pivot_col[k])] =
                T{} - rows[pivot_row[k]][static_cast<size_t>(f)];
        basis.push_back(std::move(x));
    }
    return basis;
}

/*
 * Fraction-free elimination on an integer matrix; every division below is
 * exact. Returns the rank. The parallel variant distributes the row update
 * loop and performs the identical arithmetic, so pivots match bitwise.
 */
inline long bareiss_rank(std::vector<std::vector<mpz_class>> m, bool parallel) {
    if (m.empty()) return 0;
    const long nrows = static_cast<long>(m.size());
    const long ncols = static_cast<long>(m[0].size());
    mpz_class prev = 1;
    long r = 0;
    for (long c = 0; c < ncols && r < nrows; ++c) {
        long hit = -1;
        for (long i = r; i < nrows; ++i) {
            if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
                hit = i;
                break;
            }
        }
        if (hit < 0) continue;
        std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(hit)]);
        const auto& pivot_row = m[static_cast<size_t>(r)];
        const mpz_class& piv = pivot_row[static_cast<size_t>(c)];
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && nrows - r > 8)
#endif
        for (long i = r + 1; i < nrows; ++i) {
            auto& row = m[static_cast<size_t>(i)];
            const mpz_class& lead = row[static_cast<size_t>(c)];
            for (long j = c + 1; j < ncols; ++j) {
                mpz_class t = piv * row[static_cast<size_t>(j)] -
                              lead * pivot_row[static_cast<size_t>(j)];
                mpz_divexact(row[static_cast<size_t>(j)].get_mpz_t(), t.get_mpz_t(),
                             prev.get_mpz_t());
            }
            row[static_cast<size_t>(c)] = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

inline long bareiss_rank_serial(std::vector<std::vector<mpz_class>> m) {
    return bareiss_rank(std::move(m), false);
}

inline long bareiss_rank_parallel(std::vector<std::vector<mpz_class>> m) {
    return bareiss_rank(std::move(m), true);
}

/* Clears denominators row by row, then runs fraction-free elimination. */
inline long rational_rank(const std::vector<std::vector<Rational>>& rows, bool parallel = false) {
    std::vector<std::vector<mpz_class>> m;
    m.reserve(rows.size());
    for (const auto& row : rows) {
        mpz_class l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<mpz_class> irow;
        irow.reserve(row.size());
        for (const auto& x : row) irow.push_back(x.get_num() * (l / x.get_den()));
        m.push_back(std::move(irow));
    }
    return bareiss_rank(std::move(m), parallel);
}

} // namespace vir

#endif

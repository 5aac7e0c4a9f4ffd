#include "vir/fock.hpp"

#include <algorithm>
#include <functional>

#include "vir/errors.hpp"
#include "vir/linalg.hpp"

namespace vir {

FockVector fock_zero(const QuadExt& lambda, long level) {
    FockVector v;
    v.lambda = lambda;
    v.level = level;
    return v;
}

FockVector fock_monomial(const QuadExt& lambda, const Partition& nu) {
    FockVector v = fock_zero(lambda, level_of(nu));
    v.coeffs[nu] = QuadExt(1);
    return v;
}

bool fock_is_zero(const FockVector& v) { return v.coeffs.empty(); }

bool fock_equal(const FockVector& a, const FockVector& b) {
    return a.level == b.level && a.coeffs == b.coeffs;
}

FockVector fock_add(const FockVector& a, const FockVector& b) {
    FockVector r = a;
    for (const auto& [nu, x] : b.coeffs) {
        auto it = r.coeffs.find(nu);
        if (it == r.coeffs.end()) {
            r.coeffs[nu] = x;
        } else {
            it->second += x;
            if (it->second.is_zero()) r.coeffs.erase(it);
        }
    }
    return r;
}

FockVector fock_scale(const QuadExt& k, const FockVector& v) {
    FockVector r = fock_zero(v.lambda, v.level);
    if (k.is_zero()) return r;
    for (const auto& [nu, x] : v.coeffs) r.coeffs[nu] = k * x;
    return r;
}

std::vector<QuadExt> fock_coordinates(const FockVector& v) {
    const auto& basis = level_basis(v.level);
    std::vector<QuadExt> x(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        auto it = v.coeffs.find(basis[i]);
        if (it != v.coeffs.end()) x[i] = it->second;
    }
    return x;
}

FockVector fock_from_coordinates(const QuadExt& lambda, long level,
                                 const std::vector<QuadExt>& x) {
    const auto& basis = level_basis(level);
    FockVector v = fock_zero(lambda, level);
    for (size_t i = 0; i < basis.size(); ++i)
        if (!x[i].is_zero()) v.coeffs[basis[i]] = x[i];
    return v;
}

namespace {

void add_term(std::map<Partition, QuadExt, PartLess>& acc, const Partition& nu,
              const QuadExt& x) {
    if (x.is_zero()) return;
    auto it = acc.find(nu);
    if (it == acc.end()) {
        acc[nu] = x;
    } else {
        it->second += x;
        if (it->second.is_zero()) acc.erase(it);
    }
}

} // namespace

FockVector heis_act(long n, const FockVector& v) {
    FockVector r = fock_zero(v.lambda, v.level - n);
    if (r.level < 0) {
        r.level = 0;
        return r;
    }
    for (const auto& [nu, x] : v.coeffs) {
        if (n == 0) {
            add_term(r.coeffs, nu, v.lambda * x);
        } else if (n < 0) {
            Partition w = nu;
            w.insert(std::upper_bound(w.begin(), w.end(), -n, std::greater<long>()), -n);
            add_term(r.coeffs, w, x);
        } else {
            long mult = static_cast<long>(std::count(nu.begin(), nu.end(), n));
            if (mult == 0) continue;
            Partition w = nu;
            w.erase(std::find(w.begin(), w.end(), n));
            add_term(r.coeffs, w, QuadExt(rat(n * mult)) * x);
        }
    }
    return r;
}

FockVector vir_act_on_fock(const CentralCharge& cc, long n, const FockVector& v) {
    if (n == 0) {
        FockVector r = fock_zero(v.lambda, v.level);
        QuadExt half = QuadExt(rat(1, 2));
        QuadExt h = half * v.lambda * (v.lambda - cc.Q);
        for (const auto& [nu, x] : v.coeffs)
            add_term(r.coeffs, nu, (h + QuadExt(rat(level_of(nu)))) * x);
        return r;
    }
    FockVector r = fock_zero(v.lambda, v.level - n);
    if (r.level < 0) {
        r.level = 0;
        return r;
    }
    QuadExt half = QuadExt(rat(1, 2));
    /* oscillator pairs with index sum n commute, so no ordering correction */
    for (long beta = n - v.level; beta <= v.level; ++beta) {
        FockVector term = heis_act(n - beta, heis_act(beta, v));
        r = fock_add(r, fock_scale(half, term));
    }
    QuadExt lin = QuadExt(rat(-(n + 1), 2)) * cc.Q;
    r = fock_add(r, fock_scale(lin, heis_act(n, v)));
    return r;
}

KacModuleBasis kac_basis(const CentralCharge& cc, long r, long s, long N) {
    if (r < 1 || s < 1 || N < 0) throw InvalidParameters("kac_basis needs r,s >= 1 and N >= 0");
    KacModuleBasis out;
    out.label = {r, s};
    out.lambda = heisenberg_weight(cc, r, s);
    out.cutoff = conformal_weight(cc, r, s) + rat(r * s);
    out.levels.resize(static_cast<size_t>(N + 1));

    const long rs = r * s;
    for (long n = 0; n <= N; ++n) {
        const auto& basis = level_basis(n);
        if (n < rs) {
            for (const auto& nu : basis)
                out.levels[static_cast<size_t>(n)].push_back(fock_monomial(out.lambda, nu));
            continue;
        }
        SpanBuilder<QuadExt> span(static_cast<long>(basis.size()));
        for (long j = 1; j <= n; ++j)
            for (const auto& u : out.levels[static_cast<size_t>(n - j)])
                span.insert(fock_coordinates(vir_act_on_fock(cc, -j, u)));
        for (const auto& row : span.rows())
            out.levels[static_cast<size_t>(n)].push_back(fock_from_coordinates(out.lambda, n, row));
    }
    return out;
}

std::vector<long long> kac_dims(const KacModuleBasis& basis) {
    std::vector<long long> dims;
    dims.reserve(basis.levels.size());
    for (const auto& level : basis.levels) dims.push_back(static_cast<long long>(level.size()));
    return dims;
}

namespace {

struct StructureBuilder {
    const CentralCharge& cc;
    ModuleStructure st;
    Rational base;
    long max_gap;
    bool have_base = false;

    explicit StructureBuilder(const CentralCharge& c, long cap) : cc(c), max_gap(cap) {}

    /* returns false when the factor falls past the gap cap */
    bool push(long r, long s) {
        Rational h = conformal_weight(cc, r, s);
        if (!have_base) {
            base = h;
            have_base = true;
        } else if (max_gap >= 0 && h - base > max_gap) {
            st.truncated = true;
            return false;
        }
        st.factors.push_back({r, s});
        st.weights.push_back(h);
        return true;
    }

    void arrow(long from, long to) {
        long count = static_cast<long>(st.factors.size());
        if (from < count && to < count) st.arrows.emplace_back(from, to);
    }
};

/*
 * The full Fock module over lambda_{r,s} for 1 <= r <= p-1 and s = nq+s0
 * with 1 <= s0 <= q-1: a zigzag over two strands, the one holding the
 * bottom factor (index 0) and a parallel one.
 */
void ff_bulk(StructureBuilder& b, long p, long q, long r, long s0, long n) {
    b.push(r, n * q + s0);
    long tcount = 0, bcount = 0;
    /* weights grow strictly along each strand, so stop at the first miss */
    for (long k = 1;; ++k) {
        long ts = (k % 2 == 1) ? (n + k) * q + s0 : (n + k + 1) * q - s0;
        if (!b.push(p - r, ts)) break;
        ++tcount;
    }
    for (long k = 1;; ++k) {
        long bs = (k % 2 == 1) ? (n + k + 1) * q - s0 : (n + k) * q + s0;
        if (!b.push(r, bs)) break;
        ++bcount;
    }
    auto T = [&](long k) { return k; };
    auto B = [&](long k) { return tcount + k; };
    if (bcount >= 1) b.arrow(0, B(1));
    for (long i = 1; 2 * i <= bcount; ++i) {
        b.arrow(B(2 * i), B(2 * i - 1));
        if (2 * i + 1 <= bcount) b.arrow(B(2 * i), B(2 * i + 1));
    }
    if (tcount >= 1) {
        b.arrow(T(1), 0);
        if (tcount >= 2) b.arrow(T(1), T(2));
        if (bcount >= 2) b.arrow(T(1), B(2));
    }
    for (long i = 1; 2 * i + 1 <= tcount; ++i) {
        b.arrow(T(2 * i + 1), T(2 * i));
        if (2 * i + 2 <= tcount) b.arrow(T(2 * i + 1), T(2 * i + 2));
        if (2 * i <= bcount) b.arrow(T(2 * i + 1), B(2 * i));
        if (2 * i + 2 <= bcount) b.arrow(T(2 * i + 1), B(2 * i + 2));
    }
    for (long i = 1; 2 * i <= tcount; ++i) {
        if (2 * i - 1 <= bcount) b.arrow(T(2 * i), B(2 * i - 1));
        if (2 * i + 1 <= bcount) b.arrow(T(2 * i), B(2 * i + 1));
    }
    b.st.strip = DiagramCase::Bulk;
}

/* One-strand chain for lambda_{p, nq+s0} with n >= 1; odd factors surject
 * onto their neighbors. */
void ff_boundary_s(StructureBuilder& b, long p, long q, long s0, long n) {
    b.push(p, n * q + s0);
    for (long j = 2;; ++j) {
        long ss = (j % 2 == 0) ? (n + j) * q - s0 : (n + j - 1) * q + s0;
        if (!b.push(p, ss)) break;
    }
    long count = static_cast<long>(b.st.factors.size());
    for (long j = 1; j <= count; j += 2) {
        if (j >= 3) b.arrow(j - 1, j - 2);
        b.arrow(j - 1, j);
    }
    b.st.strip = DiagramCase::BoundaryS;
}

/* One-strand chain for lambda_{r, nq}, r <= p-1, n >= 1; even factors
 * surject onto their neighbors. */
void ff_boundary_r(StructureBuilder& b, long p, long q, long r, long n) {
    for (long j = 1;; ++j) {
        long rr = (j % 2 == 1) ? r : p - r;
        if (!b.push(rr, (n + j - 1) * q)) break;
    }
    long count = static_cast<long>(b.st.factors.size());
    for (long j = 2; j <= count; j += 2) {
        b.arrow(j - 1, j - 2);
        b.arrow(j - 1, j);
    }
    b.st.strip = DiagramCase::BoundaryR;
}

/* Semisimple string for lambda_{p, nq}, n >= 1. */
void ff_corner(StructureBuilder& b, long p, long q, long n) {
    for (long j = 1;; ++j)
        if (!b.push(p, (n + 2 * (j - 1)) * q)) break;
    b.st.strip = DiagramCase::Corner;
}

void reverse_arrows(ModuleStructure& st) {
    for (auto& [from, to] : st.arrows) std::swap(from, to);
    st.contragredient = true;
}

} // namespace

ModuleStructure ff_structure(const CentralCharge& cc, long r, long s, long max_gap) {
    if (r < 1 || s < 1) throw InvalidParameters("ff_structure needs r,s >= 1");
    if (max_gap < 0) throw InvalidParameters("ff_structure needs max_gap >= 0");
    const long p = cc.p;
    const long q = cc.q;
    /* lambda_{r,s} = lambda_{r-p,s-q}, so slide into the window where one
     * coordinate is small */
    while (r > p && s > q) {
        r -= p;
        s -= q;
    }

    StructureBuilder b(cc, max_gap);
    b.st.kind = StructureKind::FeiginFuchs;

    if (r <= p - 1 && s % q != 0) {
        ff_bulk(b, p, q, r, s % q, s / q);
    } else if (r == p && s % q != 0 && s > q) {
        ff_boundary_s(b, p, q, s % q, s / q);
    } else if (r % p == 0 && s <= q - 1) {
        ff_boundary_s(b, p, q, q - s, r / p);
        reverse_arrows(b.st);
    } else if (r <= p - 1 && s % q == 0) {
        ff_boundary_r(b, p, q, r, s / q);
    } else if (r % p == 0 && s % q == 0) {
        /* lambda_{Mp,Nq} matches lambda_{p,(N-M+1)q} when N >= M and is the
         * contragredient weight otherwise; either way the string is the same */
        long M = r / p;
        long N = s / q;
        ff_corner(b, p, q, (M > N ? M - N : N - M) + 1);
    } else if (s <= q - 1) {
        long k = r / p + 1;
        ff_bulk(b, p, q, k * p - r, q - s, k - 1);
        reverse_arrows(b.st);
    } else {
        long k = r / p + 1;
        ff_boundary_r(b, p, q, k * p - r, k - 1);
        reverse_arrows(b.st);
    }
    b.st.length = static_cast<long>(b.st.factors.size());
    return b.st;
}

namespace {

/* Bulk submodule factors for r = mp + r0, s = nq + s0 with m <= n: strand A
 * holds the bottom factor, strand C the complementary first label. */
void kac_bulk_display1(StructureBuilder& b, long p, long q, long r0, long s0, long m, long n) {
    for (long j = 0; j <= 2 * m + 1; ++j) {
        long ss;
        if (j == 0) ss = (n - m) * q + s0;
        else if (j % 2 == 1) ss = (n - m + j + 1) * q - s0;
        else ss = (n - m + j) * q + s0;
        b.push(r0, ss);
    }
    for (long j = 0; j <= 2 * m - 1; ++j) {
        long ss = (j % 2 == 0) ? (n - m + j + 1) * q + s0 : (n - m + j + 2) * q - s0;
        b.push(p - r0, ss);
    }
    auto A = [&](long j) { return j - 1; };
    auto C = [&](long j) { return 2 * m + 1 + j; };
    for (long i = 0; 2 * i + 2 <= 2 * m + 2; ++i) {
        if (i >= 1) b.arrow(A(2 * i + 1), A(2 * i));
        b.arrow(A(2 * i + 1), A(2 * i + 2));
    }
    for (long i = 1; 2 * i - 1 <= 2 * m; ++i) {
        if (i >= 2) b.arrow(C(2 * i - 1), C(2 * i - 2));
        if (2 * i <= 2 * m) b.arrow(C(2 * i - 1), C(2 * i));
        b.arrow(C(2 * i - 1), A(2 * i - 1));
        b.arrow(C(2 * i - 1), A(2 * i + 1));
    }
    for (long i = 1; 2 * i <= 2 * m; ++i) {
        b.arrow(C(2 * i), A(2 * i));
        b.arrow(C(2 * i), A(2 * i + 2));
    }
}

/* Bulk factors for n < m: strand E holds the complementary first label and
 * surjects onto strand G. */
void kac_bulk_display2(StructureBuilder& b, long p, long q, long r0, long s0, long m, long n) {
    for (long j = 1; j <= 2 * n + 1; ++j) {
        long ss = (j % 2 == 1) ? (m - n + j) * q - s0 : (m - n + j - 1) * q + s0;
        b.push(p - r0, ss);
    }
    for (long j = 1; j <= 2 * n + 1; ++j) {
        long ss = (j % 2 == 1) ? (m - n + j + 1) * q - s0 : (m - n + j) * q + s0;
        b.push(r0, ss);
    }
    auto E = [&](long j) { return j - 1; };
    auto G = [&](long j) { return 2 * n + 1 + j - 1; };
    b.arrow(E(1), G(1));
    for (long i = 1; 2 * i <= 2 * n + 1; ++i) {
        b.arrow(E(2 * i), E(2 * i - 1));
        if (2 * i + 1 <= 2 * n + 1) b.arrow(E(2 * i), E(2 * i + 1));
        if (i >= 2) b.arrow(E(2 * i), G(2 * i - 2));
        b.arrow(E(2 * i), G(2 * i));
    }
    for (long i = 1; 2 * i + 1 <= 2 * n + 1; ++i) {
        b.arrow(E(2 * i + 1), G(2 * i - 1));
        b.arrow(E(2 * i + 1), G(2 * i + 1));
    }
    for (long i = 1; 2 * i <= 2 * n + 1; ++i) {
        b.arrow(G(2 * i), G(2 * i - 1));
        if (2 * i + 1 <= 2 * n + 1) b.arrow(G(2 * i), G(2 * i + 1));
    }
}

} // namespace

ModuleStructure kac_structure(const CentralCharge& cc, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("kac_structure needs r,s >= 1");
    const long p = cc.p;
    const long q = cc.q;
    const long r0 = (r - 1) % p + 1;
    const long s0 = (s - 1) % q + 1;
    const long m = (r - r0) / p;
    const long n = (s - s0) / q;

    StructureBuilder b(cc, -1);
    b.st.kind = StructureKind::Kac;

    if (r0 <= p - 1 && s0 <= q - 1) {
        if (m <= n) kac_bulk_display1(b, p, q, r0, s0, m, n);
        else kac_bulk_display2(b, p, q, r0, s0, m, n);
        b.st.strip = DiagramCase::Bulk;
    } else if (r0 == p && s0 <= q - 1) {
        long M = m + 1; /* r = Mp */
        if (M <= n) {
            for (long j = 1; j <= 2 * M; ++j) {
                long ss = (j % 2 == 1) ? (n - M + j) * q + s0 : (n - M + j + 1) * q - s0;
                b.push(p, ss);
            }
            for (long j = 1; j <= 2 * M; j += 2) {
                if (j >= 3) b.arrow(j - 1, j - 2);
                b.arrow(j - 1, j);
            }
        } else {
            for (long j = 1; j <= 2 * n + 1; ++j) {
                long ss = (j % 2 == 1) ? (M - n + j) * q - s0 : (M - n + j - 1) * q + s0;
                b.push(p, ss);
            }
            for (long j = 2; j <= 2 * n + 1; j += 2) {
                b.arrow(j - 1, j - 2);
                b.arrow(j - 1, j);
            }
        }
        b.st.strip = DiagramCase::BoundaryS;
    } else if (r0 <= p - 1 && s0 == q) {
        long N = n + 1; /* s = Nq */
        if (m < N) {
            for (long j = 1; j <= 2 * m + 1; ++j) {
                long rr = (j % 2 == 1) ? r0 : p - r0;
                b.push(rr, (N - m + j - 1) * q);
            }
            for (long j = 2; j <= 2 * m + 1; j += 2) {
                b.arrow(j - 1, j - 2);
                b.arrow(j - 1, j);
            }
        } else {
            for (long j = 1; j <= 2 * N; ++j) {
                long rr = (j % 2 == 1) ? p - r0 : r0;
                b.push(rr, (m - N + j) * q);
            }
            for (long j = 1; j <= 2 * N; j += 2) {
                if (j >= 3) b.arrow(j - 1, j - 2);
                b.arrow(j - 1, j);
            }
        }
        b.st.strip = DiagramCase::BoundaryR;
    } else {
        long M = m + 1;
        long N = n + 1;
        long lo = (M < N) ? M : N;
        long diff = (M > N) ? M - N : N - M;
        for (long k = 0; k < lo; ++k) b.push(p, (diff + 1 + 2 * k) * q);
        b.st.strip = DiagramCase::Corner;
    }
    b.st.length = static_cast<long>(b.st.factors.size());
    return b.st;
}

} // namespace vir

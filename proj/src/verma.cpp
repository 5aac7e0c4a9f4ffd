#include "vir/verma.hpp"

#include <algorithm>

#include "vir/errors.hpp"
#include "vir/linalg.hpp"

namespace vir {

PBWVector pbw_zero(const Rational& c, const Rational& h, long level) {
    PBWVector v;
    v.c = c;
    v.h = h;
    v.level = level;
    return v;
}

PBWVector pbw_monomial(const Rational& c, const Rational& h, const Partition& nu) {
    PBWVector v = pbw_zero(c, h, level_of(nu));
    v.coeffs[nu] = 1;
    return v;
}

bool pbw_is_zero(const PBWVector& v) { return v.coeffs.empty(); }

bool pbw_equal(const PBWVector& a, const PBWVector& b) {
    return a.level == b.level && a.coeffs == b.coeffs;
}

PBWVector pbw_add(const PBWVector& a, const PBWVector& b) {
    PBWVector r = a;
    for (const auto& [nu, x] : b.coeffs) {
        auto it = r.coeffs.find(nu);
        if (it == r.coeffs.end()) {
            r.coeffs[nu] = x;
        } else {
            it->second += x;
            if (it->second == 0) r.coeffs.erase(it);
        }
    }
    return r;
}

PBWVector pbw_scale(const Rational& k, const PBWVector& v) {
    PBWVector r = pbw_zero(v.c, v.h, v.level);
    if (k == 0) return r;
    for (const auto& [nu, x] : v.coeffs) r.coeffs[nu] = k * x;
    return r;
}

std::vector<Rational> pbw_coordinates(const PBWVector& v) {
    const auto& basis = level_basis(v.level);
    std::vector<Rational> x(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        auto it = v.coeffs.find(basis[i]);
        if (it != v.coeffs.end()) x[i] = it->second;
    }
    return x;
}

PBWVector pbw_from_coordinates(const Rational& c, const Rational& h, long level,
                               const std::vector<Rational>& x) {
    const auto& basis = level_basis(level);
    PBWVector v = pbw_zero(c, h, level);
    for (size_t i = 0; i < basis.size(); ++i)
        if (x[i] != 0) v.coeffs[basis[i]] = x[i];
    return v;
}

namespace {

void add_term(std::map<Partition, Rational, PartLess>& acc, const Partition& nu,
              const Rational& x) {
    if (x == 0) return;
    auto it = acc.find(nu);
    if (it == acc.end()) {
        acc[nu] = x;
    } else {
        it->second += x;
        if (it->second == 0) acc.erase(it);
    }
}

} // namespace

const VirasoroAction::Term& VirasoroAction::mono(long m, const Partition& nu) {
    auto key = std::make_pair(m, nu);
    auto hit = m_cache.find(key);
    if (hit != m_cache.end()) return hit->second;

    Term out;
    if (nu.empty()) {
        if (m == 0) {
            out[Partition{}] = m_h;
        } else if (m < 0) {
            out[Partition{-m}] = 1;
        }
        /* positive modes kill the highest-weight vector */
    } else if (m < 0 && -m >= nu.front()) {
        Partition w;
        w.reserve(nu.size() + 1);
        w.push_back(-m);
        w.insert(w.end(), nu.begin(), nu.end());
        out[w] = 1;
    } else if (m == 0) {
        Rational val = m_h + rat(level_of(nu));
        out[nu] = val;
    } else {
        /* straighten against the leading mode: L_m L_{-k} = L_{-k} L_m + (m+k) L_{m-k} + center */
        long k = nu.front();
        Partition rest(nu.begin() + 1, nu.end());
        for (const auto& [mu, x] : mono(m, rest)) {
            if (mu.empty() || mu.front() <= k) {
                Partition w;
                w.reserve(mu.size() + 1);
                w.push_back(k);
                w.insert(w.end(), mu.begin(), mu.end());
                add_term(out, w, x);
            } else {
                /* the recursion grew a mode past -k, normal-order once more */
                for (const auto& [w, y] : mono(-k, mu)) add_term(out, w, x * y);
            }
        }
        Rational f = rat(m + k);
        if (f != 0)
            for (const auto& [mu, x] : mono(m - k, rest)) add_term(out, mu, f * x);
        if (m == k) {
            Rational center = m_c * rat(m * m * m - m, 12);
            if (center != 0) add_term(out, rest, center);
        }
    }
    auto [it, ok] = m_cache.emplace(std::move(key), std::move(out));
    return it->second;
}

PBWVector VirasoroAction::act(long m, const PBWVector& v) {
    PBWVector r = pbw_zero(m_c, m_h, v.level - m);
    if (r.level < 0) {
        r.level = 0;
        return r;
    }
    for (const auto& [nu, x] : v.coeffs)
        for (const auto& [mu, y] : mono(m, nu)) add_term(r.coeffs, mu, x * y);
    return r;
}

PBWVector act(const Rational& c, const Rational& h, long m, const PBWVector& v) {
    VirasoroAction a(c, h);
    return a.act(m, v);
}

namespace {

std::vector<PBWVector> kernel_vectors(VirasoroAction& action, long N,
                                      const SpanBuilder<Rational>* mod1,
                                      const SpanBuilder<Rational>* mod2) {
    const auto& basis = level_basis(N);
    const long cols = static_cast<long>(basis.size());
    const long n1 = static_cast<long>(level_basis(N - 1).size());
    const long n2 = N >= 2 ? static_cast<long>(level_basis(N - 2).size()) : 0;

    /* images of every basis monomial under the first two raising modes */
    std::vector<std::vector<Rational>> im1(basis.size()), im2(basis.size());
    for (size_t j = 0; j < basis.size(); ++j) {
        PBWVector v1 = action.act(1, pbw_monomial(action.c(), action.h(), basis[j]));
        std::vector<Rational> x1 = pbw_coordinates(v1);
        im1[j] = mod1 ? mod1->residual(std::move(x1)) : std::move(x1);
        if (N >= 2) {
            PBWVector v2 = action.act(2, pbw_monomial(action.c(), action.h(), basis[j]));
            std::vector<Rational> x2 = pbw_coordinates(v2);
            im2[j] = mod2 ? mod2->residual(std::move(x2)) : std::move(x2);
        }
    }
    std::vector<std::vector<Rational>> rows;
    rows.reserve(static_cast<size_t>(n1 + n2));
    for (long i = 0; i < n1; ++i) {
        std::vector<Rational> row(static_cast<size_t>(cols));
        for (long j = 0; j < cols; ++j) row[static_cast<size_t>(j)] = im1[static_cast<size_t>(j)][static_cast<size_t>(i)];
        rows.push_back(std::move(row));
    }
    for (long i = 0; i < n2; ++i) {
        std::vector<Rational> row(static_cast<size_t>(cols));
        for (long j = 0; j < cols; ++j) row[static_cast<size_t>(j)] = im2[static_cast<size_t>(j)][static_cast<size_t>(i)];
        rows.push_back(std::move(row));
    }

    auto ker = kernel_basis(std::move(rows), cols);
    std::vector<PBWVector> out;
    for (auto& x : ker) out.push_back(pbw_from_coordinates(action.c(), action.h(), N, x));
    return out;
}

PBWVector normalize_leading(const PBWVector& v) {
    if (v.coeffs.empty()) return v;
    /* prefer the pure L_{-1} power, fall back to the first nonzero coordinate */
    Partition allones(static_cast<size_t>(v.level), 1);
    auto it = v.coeffs.find(allones);
    Rational lead = (it != v.coeffs.end()) ? it->second : v.coeffs.begin()->second;
    return pbw_scale(rat(1) / lead, v);
}

} // namespace

std::vector<PBWVector> singular_vectors(const Rational& c, const Rational& h, long N) {
    if (N < 0) throw InvalidParameters("level must be nonnegative");
    VirasoroAction action(c, h);
    if (N == 0) return {pbw_monomial(c, h, {})};
    auto ker = kernel_vectors(action, N, nullptr, nullptr);
    std::vector<PBWVector> out;
    for (const auto& v : ker) out.push_back(normalize_leading(v));
    return out;
}

std::vector<PBWVector> singular_vectors_in_quotient(const Rational& c, const Rational& h, long N,
                                                    const std::vector<PBWVector>& gens) {
    if (N < 1) throw InvalidParameters("level must be positive");
    VirasoroAction action(c, h);

    /* submodule spans at the three levels the constraints touch */
    auto span_at = [&](long L) {
        SpanBuilder<Rational> span(static_cast<long>(level_basis(L).size()));
        for (const auto& g : gens) {
            if (g.level > L) continue;
            for (const auto& mu : level_basis(L - g.level)) {
                PBWVector w = g;
                for (auto it = mu.rbegin(); it != mu.rend(); ++it) w = action.act(-*it, w);
                span.insert(pbw_coordinates(w));
            }
        }
        return span;
    };
    SpanBuilder<Rational> u0 = span_at(N);
    SpanBuilder<Rational> u1 = span_at(N - 1);
    SpanBuilder<Rational> u2 = N >= 2 ? span_at(N - 2) : SpanBuilder<Rational>(1);

    auto ker = kernel_vectors(action, N, &u1, N >= 2 ? &u2 : nullptr);
    std::vector<PBWVector> out;
    SpanBuilder<Rational> seen = u0;
    for (const auto& v : ker) {
        auto res = seen.residual(pbw_coordinates(v));
        bool nonzero = false;
        for (const auto& x : res)
            if (x != 0) nonzero = true;
        if (!nonzero) continue;
        seen.insert(res);
        out.push_back(normalize_leading(pbw_from_coordinates(c, h, N, res)));
    }
    return out;
}

namespace {

struct RawNode {
    KacLabel label;
    long distance;
};

/* Walks the submodule pattern below a canonical label, distance level by
 * distance level, until keep() declines a whole level. */
template <class Keep>
std::pair<DiagramCase, std::vector<RawNode>> diagram_nodes(const CentralCharge& cc,
                                                           KacLabel canon, Keep keep) {
    const long p = cc.p;
    const long q = cc.q;
    const long r = canon.r;
    const long s = canon.s;
    std::vector<RawNode> nodes;
    nodes.push_back({canon, 0});

    auto emit = [&](long rr, long ss, long dist) { return keep(KacLabel{rr, ss}, dist); };

    if (r <= p - 1 && s % q != 0) {
        long s0 = s % q;
        long n = s / q;
        /* two strands; strand index k sits at distance k+1 */
        for (long k = 0;; ++k) {
            long tr = p - r, ts;
            if (k == 0) ts = (n + 1) * q + s0;
            else if (k % 2 == 1) ts = (n + k + 2) * q - s0;
            else ts = (n + k + 1) * q + s0;
            long br = r, bs;
            if (k % 2 == 0) bs = (n + k + 2) * q - s0;
            else bs = (n + k + 1) * q + s0;
            bool a = emit(tr, ts, k + 1);
            bool b = emit(br, bs, k + 1);
            if (!a && !b) break;
            if (a) nodes.push_back({{tr, ts}, k + 1});
            if (b) nodes.push_back({{br, bs}, k + 1});
        }
        return {DiagramCase::Bulk, nodes};
    }
    if (r == p && s % q != 0) {
        long s0 = s % q;
        long n = s / q;
        for (long k = 1;; ++k) {
            long ss = (k % 2 == 1) ? (n + k + 1) * q - s0 : (n + k) * q + s0;
            if (!emit(p, ss, k)) break;
            nodes.push_back({{p, ss}, k});
        }
        return {DiagramCase::BoundaryS, nodes};
    }
    if (r <= p - 1 && s % q == 0) {
        long n = s / q;
        for (long k = 1;; ++k) {
            long rr = (k % 2 == 1) ? p - r : r;
            if (!emit(rr, (n + k) * q, k)) break;
            nodes.push_back({{rr, (n + k) * q}, k});
        }
        return {DiagramCase::BoundaryR, nodes};
    }
    long n = s / q;
    for (long k = 1;; ++k) {
        if (!emit(p, (n + 2 * k) * q, k)) break;
        nodes.push_back({{p, (n + 2 * k) * q}, k});
    }
    return {DiagramCase::Corner, nodes};
}

EmbeddingDiagram assemble(const CentralCharge& cc, DiagramCase kind,
                          const std::vector<RawNode>& raw) {
    EmbeddingDiagram d;
    d.kind = kind;
    for (const auto& n : raw)
        d.nodes.push_back({n.label, conformal_weight(cc, n.label.r, n.label.s), n.distance});
    std::stable_sort(d.nodes.begin(), d.nodes.end(), [](const DiagramNode& a, const DiagramNode& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.weight < b.weight;
    });
    /* arrows run from each node to every node one step shallower */
    for (size_t i = 0; i < d.nodes.size(); ++i)
        for (size_t j = 0; j < d.nodes.size(); ++j)
            if (d.nodes[i].distance == d.nodes[j].distance + 1)
                d.arrows.emplace_back(static_cast<long>(i), static_cast<long>(j));
    return d;
}

} // namespace

EmbeddingDiagram embedding_diagram(const CentralCharge& cc, KacLabel label, long depth) {
    if (depth < 1) throw InvalidParameters("depth must be at least 1");
    KacLabel canon = normalize_label(cc, label.r, label.s).canonical;
    long count = 1;
    auto [kind, raw] = diagram_nodes(cc, canon, [&](KacLabel, long) {
        if (count >= depth) return false;
        ++count;
        return true;
    });
    return assemble(cc, kind, raw);
}

EmbeddingDiagram embedding_diagram_for_weight(const CentralCharge& cc, const Rational& h,
                                              long depth) {
    auto label = label_for_weight(cc, h);
    if (!label) {
        EmbeddingDiagram d;
        d.kind = DiagramCase::Generic;
        d.nodes.push_back({KacLabel{0, 0}, h, 0});
        return d;
    }
    return embedding_diagram(cc, *label, depth);
}

std::vector<long long> simple_character(const CentralCharge& cc, KacLabel label, long N) {
    KacLabel canon = normalize_label(cc, label.r, label.s).canonical;
    Rational base = conformal_weight(cc, canon.r, canon.s);
    auto keep = [&](KacLabel node, long) {
        Rational gap = conformal_weight(cc, node.r, node.s) - base;
        return gap <= N;
    };
    auto [kind, raw] = diagram_nodes(cc, canon, keep);
    std::vector<long long> dims(static_cast<size_t>(N + 1), 0);
    if (kind == DiagramCase::Bulk) {
        /* two submodules per distance, so the intersections alternate */
        for (const auto& node : raw) {
            Rational gap = conformal_weight(cc, node.label.r, node.label.s) - base;
            long g = static_cast<long>(gap.get_num().get_si());
            long long sign = (node.distance % 2 == 0) ? 1 : -1;
            for (long n = g; n <= N; ++n)
                dims[static_cast<size_t>(n)] += sign * partition_count(n - g);
        }
        return dims;
    }
    /* chain shapes: the first vector generates a free module holding the rest */
    long g1 = N + 1;
    for (const auto& node : raw) {
        if (node.distance != 1) continue;
        Rational gap = conformal_weight(cc, node.label.r, node.label.s) - base;
        g1 = static_cast<long>(gap.get_num().get_si());
        break;
    }
    for (long n = 0; n <= N; ++n)
        dims[static_cast<size_t>(n)] = partition_count(n) - partition_count(n - g1);
    return dims;
}

CharacterTriple characters(const CentralCharge& cc, KacLabel label, long N) {
    CharacterTriple t;
    for (long n = 0; n <= N; ++n) {
        t.verma.push_back(partition_count(n));
        t.kac.push_back(partition_count(n) - partition_count(n - label.r * label.s));
    }
    t.simple = simple_character(cc, label, N);
    return t;
}

long c1_cofinite_dimension(const Rational& c, const Rational& h, long N, long M) {
    if (N < 1 || M < N) throw InvalidParameters("need 1 <= N <= M");
    auto sv = singular_vectors(c, h, N);
    if (sv.empty()) throw NoSingularVector("no level-" + std::to_string(N) + " singular vector");
    VirasoroAction action(c, h);

    long survivors = 0;
    for (long L = 0; L <= M; ++L) {
        const auto& basis = level_basis(L);
        SpanBuilder<Rational> span(static_cast<long>(basis.size()));
        /* monomials with any part of size two or more */
        for (size_t i = 0; i < basis.size(); ++i) {
            if (!basis[i].empty() && basis[i].front() >= 2) {
                std::vector<Rational> e(basis.size());
                e[i] = 1;
                span.insert(std::move(e));
            }
        }
        for (const auto& g : sv) {
            if (g.level > L) continue;
            for (const auto& mu : level_basis(L - g.level)) {
                PBWVector w = g;
                for (auto it = mu.rbegin(); it != mu.rend(); ++it) w = action.act(-*it, w);
                span.insert(pbw_coordinates(w));
            }
        }
        Partition allones(static_cast<size_t>(L), 1);
        PBWVector probe = pbw_monomial(c, h, allones);
        if (!span.contains(pbw_coordinates(probe))) ++survivors;
    }
    return survivors;
}

} // namespace vir

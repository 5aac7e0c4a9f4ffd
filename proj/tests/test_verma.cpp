#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "vir/errors.hpp"
#include "vir/kactable.hpp"
#include "vir/linalg.hpp"
#include "vir/partition.hpp"
#include "vir/verma.hpp"

using vir::act;
using vir::c1_cofinite_dimension;
using vir::central_charge;
using vir::CentralCharge;
using vir::characters;
using vir::conformal_weight;
using vir::DiagramCase;
using vir::embedding_diagram;
using vir::embedding_diagram_for_weight;
using vir::EmbeddingDiagram;
using vir::KacLabel;
using vir::level_basis;
using vir::Partition;
using vir::partition_count;
using vir::pbw_add;
using vir::pbw_equal;
using vir::pbw_monomial;
using vir::pbw_scale;
using vir::pbw_zero;
using vir::PBWVector;
using vir::rat;
using vir::Rational;
using vir::simple_character;
using vir::singular_vectors;
using vir::singular_vectors_in_quotient;
using vir::SpanBuilder;
using vir::VirasoroAction;

namespace {

PBWVector random_vector(const Rational& c, const Rational& h, long level, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(-3, 3);
    PBWVector v = pbw_zero(c, h, level);
    for (const auto& nu : level_basis(level)) {
        int x = coin(rng);
        if (x != 0) v.coeffs[nu] = rat(x);
    }
    return v;
}

/* span of the submodule the generators produce, at one level */
SpanBuilder<Rational> submodule_span(VirasoroAction& action, const std::vector<PBWVector>& gens,
                                     long level) {
    SpanBuilder<Rational> span(static_cast<long>(level_basis(level).size()));
    for (const auto& g : gens) {
        if (g.level > level) continue;
        for (const auto& mu : level_basis(level - g.level)) {
            PBWVector w = g;
            for (auto it = mu.rbegin(); it != mu.rend(); ++it) w = action.act(-*it, w);
            span.insert(pbw_coordinates(w));
        }
    }
    return span;
}

} // namespace

TEST_CASE("mode action on the highest-weight vector") {
    Rational c = rat(1, 2), h = rat(1, 3);
    PBWVector v = pbw_monomial(c, h, {});

    PBWVector lm1 = act(c, h, -1, v);
    CHECK(pbw_equal(lm1, pbw_monomial(c, h, {1})));
    CHECK(pbw_equal(act(c, h, 1, lm1), pbw_scale(2 * h, v)));

    PBWVector lm2 = act(c, h, -2, v);
    CHECK(pbw_equal(act(c, h, 2, lm2), pbw_scale(4 * h + c / 2, v)));
    CHECK(pbw_equal(act(c, h, 1, lm2), pbw_scale(rat(3), lm1)));

    PBWVector deep = pbw_monomial(c, h, {3, 2, 1});
    CHECK(pbw_equal(act(c, h, 0, deep), pbw_scale(h + 6, deep)));

    PBWVector gone = act(c, h, 3, lm1);
    CHECK(vir::pbw_is_zero(gone));
}

TEST_CASE("central term vanishes exactly when it should") {
    /* at c = 0, h = 0 the L_2 image of L_{-2}v collapses entirely */
    PBWVector v = pbw_monomial(rat(0), rat(0), {});
    CHECK(vir::pbw_is_zero(act(rat(0), rat(0), 2, act(rat(0), rat(0), -2, v))));
    /* at c = 26 it is the only surviving piece */
    PBWVector w = pbw_monomial(rat(26), rat(0), {});
    PBWVector out = act(rat(26), rat(0), 2, act(rat(26), rat(0), -2, w));
    CHECK(pbw_equal(out, pbw_scale(rat(13), w)));
}

TEST_CASE("commutation relations hold on random vectors") {
    Rational c = rat(-7, 5), h = rat(2, 9);
    VirasoroAction action(c, h);
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> mode(-4, 4);
    std::uniform_int_distribution<long> lev(0, 6);

    for (int trial = 0; trial < 150; ++trial) {
        long m = mode(rng), n = mode(rng);
        PBWVector w = random_vector(c, h, lev(rng), rng);

        PBWVector lhs = pbw_add(action.act(m, action.act(n, w)),
                                pbw_scale(rat(-1), action.act(n, action.act(m, w))));
        PBWVector rhs = pbw_scale(rat(m - n), action.act(m + n, w));
        if (m + n == 0) {
            Rational center = c * rat(m * m * m - m, 12);
            rhs = pbw_add(rhs, pbw_scale(center, w));
        }
        PBWVector diff = pbw_add(lhs, pbw_scale(rat(-1), rhs));
        CHECK(diff.coeffs.empty());
    }
}

TEST_CASE("level-two singular vectors") {
    /* (p,q) = (2,3): (L_{-1}^2 - (2/3) L_{-2}) v at h = 0 */
    auto sv = singular_vectors(rat(0), rat(0), 2);
    REQUIRE(sv.size() == 1);
    CHECK(sv[0].coeffs.at(Partition{1, 1}) == rat(1));
    CHECK(sv[0].coeffs.at(Partition{2}) == rat(-2, 3));
    CHECK(vir::pbw_is_zero(act(rat(0), rat(0), 1, sv[0])));
    CHECK(vir::pbw_is_zero(act(rat(0), rat(0), 2, sv[0])));

    /* (p,q) = (3,4): same shape at c = 1/2, h = 1/16, coefficient -3/4 */
    auto sw = singular_vectors(rat(1, 2), rat(1, 16), 2);
    REQUIRE(sw.size() == 1);
    CHECK(sw[0].coeffs.at(Partition{1, 1}) == rat(1));
    CHECK(sw[0].coeffs.at(Partition{2}) == rat(-3, 4));
}

TEST_CASE("no singular vectors away from the degenerate weights") {
    for (long N = 1; N <= 6; ++N) CHECK(singular_vectors(rat(1, 2), rat(1, 3), N).empty());
}

TEST_CASE("singular vectors in a quotient module") {
    Rational c = rat(0), h = rat(0);
    PBWVector gen = pbw_monomial(c, h, {1});

    auto plain = singular_vectors_in_quotient(c, h, 1, {});
    REQUIRE(plain.size() == 1);
    CHECK(pbw_equal(plain[0], gen));

    auto gone = singular_vectors_in_quotient(c, h, 1, {gen});
    CHECK(gone.empty());

    auto sv = singular_vectors_in_quotient(c, h, 2, {gen});
    REQUIRE(sv.size() == 1);
    CHECK(sv[0].coeffs.size() == 1);
    CHECK(sv[0].coeffs.at(Partition{2}) == rat(1));
}

TEST_CASE("singular levels agree with diagram gaps") {
    CentralCharge cc = central_charge(2, 3);
    struct Case {
        KacLabel label;
        long first; /* level of the first singular vector, = r*s */
    };
    const Case cases[] = {{{1, 1}, 1}, {{1, 2}, 2}, {{2, 1}, 2}, {{2, 3}, 6}};

    for (const auto& e : cases) {
        Rational h = conformal_weight(cc, e.label.r, e.label.s);
        EmbeddingDiagram d = embedding_diagram(cc, e.label, 12);
        Rational base = d.nodes[0].weight;

        std::set<long> predicted;
        for (const auto& node : d.nodes) {
            Rational gap = node.weight - base;
            if (gap > 0 && gap <= 8 && vir::is_integer(gap))
                predicted.insert(static_cast<long>(gap.get_num().get_si()));
        }
        std::set<long> found;
        for (long N = 1; N <= 8; ++N) {
            auto sv = singular_vectors(cc.c, h, N);
            if (!sv.empty()) {
                found.insert(N);
                CHECK(sv.size() == 1);
            }
        }
        CHECK(found == predicted);

        /* the first singular vector has full L_{-1}^N support */
        auto first = singular_vectors(cc.c, h, e.first);
        REQUIRE(first.size() == 1);
        Partition allones(static_cast<size_t>(e.first), 1);
        CHECK(first[0].coeffs.at(allones) == rat(1));
    }
}

TEST_CASE("bulk embedding diagram") {
    CentralCharge cc = central_charge(2, 3);
    EmbeddingDiagram d = embedding_diagram(cc, {1, 1}, 5);
    CHECK(d.kind == DiagramCase::Bulk);
    REQUIRE(d.nodes.size() == 5);

    const std::pair<KacLabel, Rational> want[] = {
        {{1, 2}, rat(0)}, {{1, 4}, rat(1)}, {{1, 5}, rat(2)}, {{1, 7}, rat(5)}, {{1, 8}, rat(7)}};
    const long dist[] = {0, 1, 1, 2, 2};
    for (size_t i = 0; i < 5; ++i) {
        CHECK(d.nodes[i].label == want[i].first);
        CHECK(d.nodes[i].weight == want[i].second);
        CHECK(d.nodes[i].distance == dist[i]);
    }
    std::set<std::pair<long, long>> arrows(d.arrows.begin(), d.arrows.end());
    std::set<std::pair<long, long>> expect = {{1, 0}, {2, 0}, {3, 1}, {3, 2}, {4, 1}, {4, 2}};
    CHECK(arrows == expect);
}

TEST_CASE("chain embedding diagrams") {
    CentralCharge cc = central_charge(2, 3);

    EmbeddingDiagram corner = embedding_diagram(cc, {2, 3}, 3);
    CHECK(corner.kind == DiagramCase::Corner);
    REQUIRE(corner.nodes.size() == 3);
    CHECK(corner.nodes[0].weight == rat(-1, 24));
    CHECK(corner.nodes[1].label == KacLabel{2, 9});
    CHECK(corner.nodes[1].weight == rat(143, 24));
    CHECK(corner.nodes[2].label == KacLabel{2, 15});
    CHECK(corner.nodes[2].weight == rat(575, 24));

    /* (2,1) normalizes onto the s-boundary chain through (2,5) */
    EmbeddingDiagram bs = embedding_diagram(cc, {2, 1}, 3);
    CHECK(bs.kind == DiagramCase::BoundaryS);
    REQUIRE(bs.nodes.size() == 3);
    CHECK(bs.nodes[0].label == KacLabel{2, 5});
    CHECK(bs.nodes[0].weight == rat(5, 8));
    CHECK(bs.nodes[1].label == KacLabel{2, 7});
    CHECK(bs.nodes[2].label == KacLabel{2, 11});
    CHECK(bs.nodes[1].weight - bs.nodes[0].weight == rat(2));
    CHECK(bs.nodes[2].weight - bs.nodes[0].weight == rat(10));

    EmbeddingDiagram br = embedding_diagram(cc, {1, 3}, 4);
    CHECK(br.kind == DiagramCase::BoundaryR);
    REQUIRE(br.nodes.size() == 4);
    CHECK(br.nodes[1].label == KacLabel{1, 6});
    CHECK(br.nodes[2].label == KacLabel{1, 9});
    CHECK(br.nodes[3].label == KacLabel{1, 12});
    CHECK(br.nodes[1].weight - br.nodes[0].weight == rat(3));
    CHECK(br.nodes[2].weight - br.nodes[0].weight == rat(9));

    EmbeddingDiagram root = embedding_diagram(cc, {1, 1}, 1);
    CHECK(root.nodes.size() == 1);
    CHECK(root.arrows.empty());
}

TEST_CASE("weights strictly increase along arrows") {
    CentralCharge cc = central_charge(2, 3);
    const KacLabel labels[] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 3}};
    for (const auto& label : labels) {
        EmbeddingDiagram d = embedding_diagram(cc, label, 8);
        CHECK(!d.arrows.empty());
        for (const auto& [from, to] : d.arrows)
            CHECK(d.nodes[static_cast<size_t>(from)].weight >
                  d.nodes[static_cast<size_t>(to)].weight);
    }
}

TEST_CASE("diagram lookup through a bare weight") {
    CentralCharge cc = central_charge(2, 3);

    EmbeddingDiagram generic = embedding_diagram_for_weight(cc, rat(1, 5), 4);
    CHECK(generic.kind == DiagramCase::Generic);
    REQUIRE(generic.nodes.size() == 1);
    CHECK(generic.nodes[0].weight == rat(1, 5));
    CHECK(generic.arrows.empty());

    EmbeddingDiagram named = embedding_diagram_for_weight(cc, rat(5, 8), 3);
    CHECK(named.kind == DiagramCase::BoundaryS);
    CHECK(named.nodes[0].label == KacLabel{2, 5});
}

TEST_CASE("character triples at (2,3)") {
    CentralCharge cc = central_charge(2, 3);
    auto t = characters(cc, {1, 1}, 5);
    CHECK(t.verma == std::vector<long long>{1, 1, 2, 3, 5, 7});
    CHECK(t.kac == std::vector<long long>{1, 0, 1, 1, 2, 2});
    CHECK(t.simple == std::vector<long long>{1, 0, 0, 0, 0, 0});

    auto u = characters(cc, {1, 2}, 8);
    CHECK(u.kac == std::vector<long long>{1, 1, 1, 2, 3, 4, 6, 8, 11});
    CHECK(u.simple == std::vector<long long>{1, 0, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("simple characters match brute-force quotients") {
    CentralCharge cc = central_charge(2, 3);
    struct Case {
        KacLabel label;
    };
    const KacLabel labels[] = {{1, 1}, {2, 1}, {2, 3}};
    const long N = 8;

    for (const auto& label : labels) {
        Rational h = conformal_weight(cc, label.r, label.s);
        VirasoroAction action(cc.c, h);

        std::vector<PBWVector> gens;
        for (long k = 1; k <= N; ++k)
            for (const auto& sv : singular_vectors(cc.c, h, k)) gens.push_back(sv);

        auto simple = simple_character(cc, label, N);
        for (long n = 0; n <= N; ++n) {
            auto span = submodule_span(action, gens, n);
            long long dim = partition_count(n) - span.rank();
            CHECK(dim == simple[static_cast<size_t>(n)]);
        }
    }
}

TEST_CASE("quotient dimension modulo single-mode states") {
    /* h_{1,2} at (2,3): two survivors; h_{1,1}: one; h_{2,3}: six */
    CHECK(c1_cofinite_dimension(rat(0), rat(0), 2, 6) == 2);
    CHECK(c1_cofinite_dimension(rat(0), rat(0), 2, 10) == 2);
    CHECK(c1_cofinite_dimension(rat(0), rat(0), 1, 4) == 1);
    CHECK(c1_cofinite_dimension(rat(0), rat(-1, 24), 6, 6) == 6);
    CHECK_THROWS_AS(c1_cofinite_dimension(rat(1, 2), rat(1, 3), 4, 6), vir::NoSingularVector);
    CHECK_THROWS_AS(c1_cofinite_dimension(rat(0), rat(0), 2, 1), vir::InvalidParameters);
}

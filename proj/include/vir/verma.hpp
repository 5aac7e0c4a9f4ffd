#ifndef VIR_VERMA_HPP
#define VIR_VERMA_HPP

#include <map>
#include <utility>
#include <vector>

#include "vir/kactable.hpp"
#include "vir/partition.hpp"
#include "vir/rational.hpp"

namespace vir {

/*
 * Element of a highest-weight module with parameters (c, h), written in the
 * ordered monomial basis L_{-k1} L_{-k2} ... v with k1 >= k2 >= ... > 0.
 * Zero coefficients are never stored.
 */
struct PBWVector {
    Rational c;
    Rational h;
    long level = 0;
    std::map<Partition, Rational, PartLess> coeffs;
};

PBWVector pbw_zero(const Rational& c, const Rational& h, long level);
PBWVector pbw_monomial(const Rational& c, const Rational& h, const Partition& nu);
bool pbw_is_zero(const PBWVector& v);
bool pbw_equal(const PBWVector& a, const PBWVector& b);
PBWVector pbw_add(const PBWVector& a, const PBWVector& b);
PBWVector pbw_scale(const Rational& k, const PBWVector& v);
std::vector<Rational> pbw_coordinates(const PBWVector& v);
PBWVector pbw_from_coordinates(const Rational& c, const Rational& h, long level,
                               const std::vector<Rational>& x);

/*
 * Mode action with a commutator cache shared across calls; the cache keys
 * are (mode, monomial) pairs, so sweeps over a whole level reuse the
 * straightening work of common tails.
 */
class VirasoroAction {
public:
    VirasoroAction(Rational c, Rational h) : m_c(std::move(c)), m_h(std::move(h)) {}

    PBWVector act(long m, const PBWVector& v);

    const Rational& c() const { return m_c; }
    const Rational& h() const { return m_h; }

private:
    using Term = std::map<Partition, Rational, PartLess>;

    const Term& mono(long m, const Partition& nu);

    Rational m_c;
    Rational m_h;
    std::map<std::pair<long, Partition>, Term> m_cache;
};

/* One-shot convenience wrapper around VirasoroAction. */
PBWVector act(const Rational& c, const Rational& h, long m, const PBWVector& v);

/* Basis of level-N vectors killed by the first two raising modes. */
std::vector<PBWVector> singular_vectors(const Rational& c, const Rational& h, long N);

/*
 * Same computation in the quotient by the submodule the given generators
 * span; returned vectors are canonical representatives of their cosets.
 */
std::vector<PBWVector> singular_vectors_in_quotient(const Rational& c, const Rational& h, long N,
                                                    const std::vector<PBWVector>& gens);

enum class DiagramCase { Bulk, BoundaryS, BoundaryR, Corner, Generic };

struct DiagramNode {
    KacLabel label;
    Rational weight;
    long distance = 0;
};

struct EmbeddingDiagram {
    DiagramCase kind = DiagramCase::Generic;
    std::vector<DiagramNode> nodes;
    std::vector<std::pair<long, long>> arrows;
};

/* Submodule diagram below the given label, truncated to depth nodes. */
EmbeddingDiagram embedding_diagram(const CentralCharge& cc, KacLabel label, long depth);

/* Same through a bare weight; a weight outside the table gives one node. */
EmbeddingDiagram embedding_diagram_for_weight(const CentralCharge& cc, const Rational& h,
                                              long depth);

struct CharacterTriple {
    std::vector<long long> verma;
    std::vector<long long> kac;
    std::vector<long long> simple;
};

/* Graded dimensions through level N of the three modules named by a label. */
CharacterTriple characters(const CentralCharge& cc, KacLabel label, long N);

std::vector<long long> simple_character(const CentralCharge& cc, KacLabel label, long N);

/*
 * Dimension of the quotient by products of two or more lowering modes and
 * by the submodule under the level-N singular vector, counted through level
 * M. Throws NoSingularVector when level N has no singular vector.
 */
long c1_cofinite_dimension(const Rational& c, const Rational& h, long N, long M);

} // namespace vir

#endif

#ifndef VIR_FUSION_HPP
#define VIR_FUSION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "vir/kactable.hpp"
#include "vir/rational.hpp"

namespace vir {

/*
 * Canonical name of a simple module: the fundamental-domain representative
 * with 1 <= r <= p and ps >= qr. Labels that name the same lowest weight
 * compare equal after normalization.
 */
struct SimpleLabel {
    long r = 1;
    long s = 1;
    friend auto operator<=>(const SimpleLabel&, const SimpleLabel&) = default;
};

SimpleLabel simple_label(const CentralCharge& cc, long r, long s);

/* Multiset of composition factors, keyed by canonical simple label. */
using GrothendieckClass = std::map<SimpleLabel, long>;

GrothendieckClass class_add(const GrothendieckClass& a, const GrothendieckClass& b);
long class_total(const GrothendieckClass& c);
bool class_contains(const GrothendieckClass& big, const GrothendieckClass& small);
std::string class_str(const GrothendieckClass& c);

/*
 * Composition factor multiset of the module named (r, s), canonicalized.
 * Zero or negative indices name the zero module and give the empty class.
 */
GrothendieckClass kac_class(const CentralCharge& cc, long r, long s);

/*
 * Product data for one fusion with the generator of a table row or column.
 * sub and quotient are the ends of the exact sequence through the product;
 * an index of zero in either label names the zero module. For the products
 * with a simple module the sequence names simple factors instead. The
 * factor multiset always equals the sum of the classes of the two ends.
 */
struct FusionOutcome {
    KacLabel sub{0, 0};
    KacLabel quotient{0, 0};
    GrothendieckClass factors;
    bool splits = false;
    bool logarithmic = false;
    std::optional<bool> indecomposable;
    std::string notes;
};

/*
 * Fusion of the (1,2) module with the module named (r, s): the sequence
 * runs from (r, s-1) to (r, s+1), splits exactly when q does not divide s,
 * and carries a non-diagonalizable zero mode exactly when q divides s.
 */
FusionOutcome fuse_k12_kac(const CentralCharge& cc, long r, long s);

/* Mirror product with the (2,1) module; the roles of p and q exchange. */
FusionOutcome fuse_k21_kac(const CentralCharge& cc, long r, long s);

/*
 * Product of a column module with a row module, which collapses onto the
 * single module named (r, s); the flag records that the surjection onto it
 * is an isomorphism.
 */
struct IsoProduct {
    GrothendieckClass factors;
    bool isomorphism = true;
};

IsoProduct fuse_kr1_k1s(const CentralCharge& cc, long r, long s);

/*
 * Fusion of the (1,2) module with a simple module. Writing the canonical
 * label as (r, nq + s0): for 1 <= s0 <= q-2 the product is the direct sum
 * of the neighbouring simples, for s0 = q-1 only the lowered simple
 * survives, and for s0 = 0 the product is the non-split extension of the
 * two neighbouring modules of the q-divisible column.
 */
FusionOutcome fuse_k12_simple(const CentralCharge& cc, const SimpleLabel& label);

/*
 * Lowest-weight constraint from the bimodule over the weight-line algebra:
 * the polynomial annihilating the zero-mode action on the bottom space of
 * the product, together with the shape of that action.
 */
enum class FuseFirst { K12, K21 };
enum class ZhuCase { TwoSemisimple, SingleEigenvalue, JordanBlock };

struct ZhuConstraint {
    /* monic: poly[0] + poly[1] x + poly[2] x^2 with poly[2] = 1 */
    std::array<Rational, 3> poly;
    std::pair<Rational, Rational> roots;
    ZhuCase kind = ZhuCase::TwoSemisimple;
};

ZhuConstraint zhu_constraint(const CentralCharge& cc, FuseFirst first, long r, long s);

/*
 * Duality status of the module named (r, s): self-dual with evaluation and
 * coevaluation inside the table block, proven non-rigid on the two strips
 * adjacent to the block, and undetermined elsewhere.
 */
enum class RigidityStatus { RigidSelfDual, NotRigid, Open };

RigidityStatus rigidity_status(const CentralCharge& cc, long r, long s);

/*
 * Empty when the claimed factor multiset matches the sum of the classes of
 * (r, s-1) and (r, s+1); otherwise a description of the mismatch.
 */
std::string class_additivity_failure(const CentralCharge& cc, long r, long s,
                                     const GrothendieckClass& claimed);

/*
 * Exhaustive cross-checks of the ring structure over a label rectangle:
 * factor additivity across both product directions, containment of each
 * class in the iterated products that reach it from (1,1), the graded
 * bound on the sum of the sequence sizes, agreement of the exact graded
 * dimensions of every sequence module with the character sum of its
 * composition factors through level 8, and the eight-versus-eight factor
 * count of the wall products at (mp+r, q). Stops at the first failure.
 */
struct ConsistencyReport {
    bool ok = true;
    long checks = 0;
    std::string first_failure;
};

ConsistencyReport check_grothendieck_consistency(const CentralCharge& cc, long rmax,
                                                 long smax);

} // namespace vir

#endif

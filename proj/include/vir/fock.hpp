#ifndef VIR_FOCK_HPP
#define VIR_FOCK_HPP

#include <map>
#include <utility>
#include <vector>

#include "vir/kactable.hpp"
#include "vir/partition.hpp"
#include "vir/quadext.hpp"
#include "vir/verma.hpp"

namespace vir {

/*
 * Element of the charged Fock space on top of v_lambda, written in the
 * commuting monomial basis a_{-n_1} a_{-n_2} ... v_lambda with
 * n_1 >= n_2 >= ... > 0.
 */
struct FockVector {
    QuadExt lambda;
    long level = 0;
    std::map<Partition, QuadExt, PartLess> coeffs;
};

FockVector fock_zero(const QuadExt& lambda, long level);
FockVector fock_monomial(const QuadExt& lambda, const Partition& nu);
bool fock_is_zero(const FockVector& v);
bool fock_equal(const FockVector& a, const FockVector& b);
FockVector fock_add(const FockVector& a, const FockVector& b);
FockVector fock_scale(const QuadExt& k, const FockVector& v);
std::vector<QuadExt> fock_coordinates(const FockVector& v);
FockVector fock_from_coordinates(const QuadExt& lambda, long level,
                                 const std::vector<QuadExt>& x);

/* Oscillator mode action with a_0 v = lambda v and [a_m, a_n] = m delta. */
FockVector heis_act(long n, const FockVector& v);

/*
 * Virasoro mode built from oscillator bilinears with the background charge
 * correction; the resulting central charge is the rational c of cc.
 */
FockVector vir_act_on_fock(const CentralCharge& cc, long n, const FockVector& v);

/*
 * The submodule of the Fock space generated under lowering modes by every
 * state lying strictly below weight h_{r,s} + rs, tabulated level by level.
 */
struct KacModuleBasis {
    KacLabel label;
    QuadExt lambda;
    Rational cutoff;
    std::vector<std::vector<FockVector>> levels;
};

KacModuleBasis kac_basis(const CentralCharge& cc, long r, long s, long N);
std::vector<long long> kac_dims(const KacModuleBasis& basis);

enum class StructureKind { FeiginFuchs, Kac };

/*
 * Composition series data: factor labels name simple modules, arrows point
 * from a factor onto the factors it can map to in the socle filtration.
 */
struct ModuleStructure {
    StructureKind kind = StructureKind::Kac;
    DiagramCase strip = DiagramCase::Bulk;
    std::vector<KacLabel> factors;
    std::vector<Rational> weights;
    std::vector<std::pair<long, long>> arrows;
    long length = 0;
    bool truncated = false;
    bool contragredient = false;
};

/*
 * Factor data for the full Fock module; the list is infinite for every
 * case, so factors are emitted only up to weight gap max_gap above the
 * bottom factor and the truncated flag records the cut.
 */
ModuleStructure ff_structure(const CentralCharge& cc, long r, long s, long max_gap = 24);

/* Factor data for the finite-length submodule named by (r, s). */
ModuleStructure kac_structure(const CentralCharge& cc, long r, long s);

} // namespace vir

#endif

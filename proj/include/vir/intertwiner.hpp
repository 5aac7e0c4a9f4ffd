#ifndef VIR_INTERTWINER_HPP
#define VIR_INTERTWINER_HPP

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "vir/fock.hpp"
#include "vir/kactable.hpp"
#include "vir/mpreal.hpp"
#include "vir/series.hpp"
#include "vir/verma.hpp"

namespace vir {

enum class SqrtBranch { Plus, Minus };

/*
 * One choice of square root of 4t*h1 + (t-1)^2 together with the resulting
 * target weight h2 = h1 + 1/(4t) - sqrt/(2t). For a table label (r,s) the
 * Plus branch takes sqrt = rt - s and lands on (r, s+1); Minus takes the
 * negative and lands on (r, s-1). A branch is admissible when sqrt/t is not
 * a positive integer, which is exactly when the coefficient recursion below
 * never divides by zero.
 */
struct BranchTarget {
    SqrtBranch branch = SqrtBranch::Plus;
    std::optional<KacLabel> target;
    Rational h2;
    Rational sqrt_disc;
    bool admissible = false;
};

std::vector<BranchTarget> allowed_targets(const CentralCharge& cc, KacLabel label);

/* Same from a bare weight; the discriminant must be a rational square. */
std::vector<BranchTarget> allowed_targets_for_weight(const CentralCharge& cc, const Rational& h1);

/*
 * Coefficients phi_k of the generator-to-generator matrix element of the
 * primary field joining weight h1 to h2, solved level by level from
 * k(tk - sqrt) phi_k = sum_i L_{-i} phi_{k-i} in the target module.
 */
struct PrimaryFieldCoefficients {
    CentralCharge cc;
    KacLabel source;
    SqrtBranch branch = SqrtBranch::Plus;
    Rational h1;
    Rational h2;
    Rational h12;
    Rational sqrt_disc;
    long N = 0;
    std::vector<PBWVector> phis;
};

PrimaryFieldCoefficients build_primary_coefficients(const CentralCharge& cc, KacLabel label,
                                                    SqrtBranch branch, long N);

/*
 * Exhaustive exact check of the raising-mode component formulas
 * L_m phi_k = (k + m(h12 - 1) + h2 - h1) phi_{k-m} and L_0 phi_k = (h2+k) phi_k
 * for all 0 <= m <= k <= M, plus vanishing for k < m.
 */
bool verify_primary_condition(const PrimaryFieldCoefficients& coeffs, long M);

/*
 * Extends the field to descendants of the source generator by the primary
 * commutation rule, evaluates it on the source singular vector, and checks
 * that the image vanishes in the target quotient module through level N.
 */
bool descends_to_kac_quotient(const PrimaryFieldCoefficients& coeffs, long N);

/*
 * Coefficients of the free-boson vertex operator between Fock modules with
 * zero-mode eigenvalues lambda and mu. theta(u, w, j) is the coefficient
 * landing at level j of the target module, for monomial arguments; the
 * generator-to-generator series is the exponential of the creation half of
 * the current, and descendants are reached through the mode commutator and
 * normal-ordering rules.
 */
class FockIntertwinerBlock {
public:
    FockIntertwinerBlock(QuadExt lambda, QuadExt mu, long N);

    const QuadExt& lambda() const { return m_lambda; }
    const QuadExt& mu() const { return m_mu; }
    long max_level() const { return m_N; }

    const FockVector& theta(const Partition& u, const Partition& w, long j);

    /* bilinear extension */
    FockVector theta_vec(const FockVector& u, const FockVector& w, long j);

private:
    QuadExt m_lambda;
    QuadExt m_mu;
    QuadExt m_sum;
    long m_N;
    std::map<std::tuple<Partition, Partition, long>, FockVector> m_memo;
};

FockIntertwinerBlock fock_intertwiner_block(const CentralCharge& cc, const QuadExt& lambda,
                                            const QuadExt& mu, long N);

/*
 * Graded dimensions of the span of all vertex-operator coefficients with
 * arguments running over the extracted submodule bases of the two labels.
 * Each coefficient is checked to lie inside the extracted submodule of the
 * label (r + r2 - 1, s + s2 - 1), and the returned dimensions are compared
 * against that target by the callers.
 */
std::vector<long long> kac_image_graded_dims(const CentralCharge& cc, long r, long s, long r2,
                                             long s2, long N);

/*
 * Residual of the degree-two hypergeometric operator on the exact series
 * 2F1(p/2, 3p/2 - 1; p; u) through order N - 2; identically zero when the
 * series solves the equation.
 */
TruncatedSeries verify_bpz_hypergeometric(long p, long N);

struct RigidityConstants {
    MpReal R_pairing;
    MpReal d_K12;
    MpReal d_K21;
};

/*
 * Closed-form duality constants: the composite-map pairing on the (1,2)
 * column and the intrinsic dimensions of the two generating objects,
 * evaluated as arbitrary-precision reals.
 */
RigidityConstants rigidity_constants(const CentralCharge& cc, long precision_bits);

} // namespace vir

#endif

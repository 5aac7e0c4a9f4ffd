#ifndef VIR_KACTABLE_HPP
#define VIR_KACTABLE_HPP

#include <compare>
#include <optional>
#include <vector>

#include "vir/quadext.hpp"
#include "vir/rational.hpp"

namespace vir {

struct KacLabel {
    long r = 0;
    long s = 0;
    friend auto operator<=>(const KacLabel&, const KacLabel&) = default;
};

/*
 * Parameters of the minimal-series central charge attached to a coprime
 * pair p,q >= 2. t is q/p; Q is the background charge, living in the
 * quadratic extension generated by sqrt(2pq).
 */
struct CentralCharge {
    long p = 0;
    long q = 0;
    Rational t;
    Rational c;
    QuadExt Q;
};

CentralCharge central_charge(long p, long q);

/* h_{r,s}; defined for any integer pair, not just first-quadrant labels. */
Rational conformal_weight(const CentralCharge& cc, long r, long s);

/* Free-boson weight lambda_{r,s} on the lattice spanned by sigma and tau. */
QuadExt heisenberg_weight(const CentralCharge& cc, long r, long s);

QuadExt lattice_sigma(const CentralCharge& cc);
QuadExt lattice_tau(const CentralCharge& cc);

/* Conformal weight of the free-boson module with zero-mode eigenvalue lambda. */
Rational weight_of_heisenberg(const CentralCharge& cc, const QuadExt& lambda);

/*
 * Fundamental-domain representative of a first-quadrant label, together
 * with the reflected partner that names the same weight inside the
 * first quadrant. The canonical side satisfies 1 <= r <= p and ps >= qr.
 */
struct NormalizedLabel {
    KacLabel canonical;
    std::vector<KacLabel> identified;
};

NormalizedLabel normalize_label(const CentralCharge& cc, long r, long s);

/* Which half of each reflection pair the canonical form keeps. */
inline const char* canonical_convention() { return "ps>=qr"; }

/* Label matching a bare conformal weight, when one exists. */
std::optional<KacLabel> label_for_weight(const CentralCharge& cc, const Rational& h);

} // namespace vir

#endif

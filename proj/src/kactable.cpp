#include "vir/kactable.hpp"

#include <numeric>

#include "vir/errors.hpp"

namespace vir {

CentralCharge central_charge(long p, long q) {
    if (p < 2 || q < 2) throw InvalidParameters("both parameters must be at least 2");
    if (std::gcd(p, q) != 1) throw InvalidParameters("parameters must be coprime");
    CentralCharge cc;
    cc.p = p;
    cc.q = q;
    cc.t = rat(q, p);
    cc.c = rat(1) - rat(6 * (p - q) * (p - q)) / rat(p * q);
    cc.Q = QuadExt(rat(0), rat(q - p, p * q), 2 * p * q);
    return cc;
}

Rational conformal_weight(const CentralCharge& cc, long r, long s) {
    long a = r * cc.q - s * cc.p;
    long b = cc.q - cc.p;
    return rat(a * a - b * b, 4 * cc.p * cc.q);
}

QuadExt lattice_sigma(const CentralCharge& cc) {
    return QuadExt(rat(0), rat(1, 2 * cc.p), 2 * cc.p * cc.q);
}

QuadExt lattice_tau(const CentralCharge& cc) {
    return QuadExt(rat(0), rat(1, 2 * cc.q), 2 * cc.p * cc.q);
}

QuadExt heisenberg_weight(const CentralCharge& cc, long r, long s) {
    return QuadExt(rat(1 - r)) * lattice_sigma(cc) - QuadExt(rat(1 - s)) * lattice_tau(cc);
}

Rational weight_of_heisenberg(const CentralCharge& cc, const QuadExt& lambda) {
    QuadExt prod = lambda * (lambda - cc.Q);
    return rat(1, 2) * prod.rational_part();
}

NormalizedLabel normalize_label(const CentralCharge& cc, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("labels live in the first quadrant");
    const long p = cc.p;
    const long q = cc.q;
    long n = r * q - s * p;
    if (n < 0) n = -n;

    NormalizedLabel out;
    if (n == 0) {
        /* the corner label is its own reflection */
        out.canonical = {p, q};
        out.identified = {KacLabel{p, q}};
        return out;
    }

    /* canonical side solves r*q = -n mod p with 1 <= r <= p */
    long rc = 0;
    for (long k = 1; k <= p; ++k) {
        if (((k * q + n) % p) == 0) {
            rc = k;
            break;
        }
    }
    long sc = (rc * q + n) / p;
    out.canonical = {rc, sc};

    /* reflected partner: least first-quadrant member of (p-rc+kp, q-sc+kq) */
    long k1 = (rc == p) ? 1 : 0;
    long k2 = (sc - q + 1 + q - 1) / q; /* ceil((sc-q+1)/q); sc >= 1 keeps it nonnegative */
    if (k2 < 0) k2 = 0;
    long k = std::max(k1, k2);
    out.identified = {KacLabel{p - rc + k * p, q - sc + k * q}};
    return out;
}

std::optional<KacLabel> label_for_weight(const CentralCharge& cc, const Rational& h) {
    /* (rq - sp)^2 = 4pq h + (q-p)^2 must be a perfect integer square */
    Rational disc = rat(4 * cc.p * cc.q) * h + rat((cc.q - cc.p) * (cc.q - cc.p));
    if (disc < 0 || !is_integer(disc)) return std::nullopt;
    mpz_class n2 = disc.get_num();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), n2.get_mpz_t());
    if (root * root != n2) return std::nullopt;
    long n = static_cast<long>(root.get_si());
    if (n == 0) return KacLabel{cc.p, cc.q};
    for (long k = 1; k <= cc.p; ++k) {
        if (((k * cc.q + n) % cc.p) == 0) return KacLabel{k, (k * cc.q + n) / cc.p};
    }
    return std::nullopt;
}

} // namespace vir

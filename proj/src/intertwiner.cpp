#include "vir/intertwiner.hpp"

#include <algorithm>
#include <utility>

#include "vir/errors.hpp"
#include "vir/linalg.hpp"
#include "vir/partition.hpp"

namespace vir {

namespace {

Rational rat_binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return rat(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

/* binom(-k, i) for k >= 1, i >= 0 */
Rational rat_binom_neg(long k, long i) {
    Rational b = rat_binom(k + i - 1, i);
    return (i % 2 == 0) ? b : -b;
}

QuadExt qpow(const QuadExt& x, long e) {
    QuadExt out(rat(1));
    for (long i = 0; i < e; ++i) out = out * x;
    return out;
}

bool is_positive_integer(const Rational& x) { return is_integer(x) && x >= 1; }

BranchTarget make_branch(const CentralCharge& cc, SqrtBranch which, const Rational& h1,
                         const Rational& sqrt_disc, std::optional<KacLabel> target) {
    BranchTarget b;
    b.branch = which;
    b.target = target;
    b.sqrt_disc = sqrt_disc;
    b.h2 = h1 + rat(1) / (rat(4) * cc.t) - sqrt_disc / (rat(2) * cc.t);
    b.admissible = !is_positive_integer(sqrt_disc / cc.t);
    return b;
}

} // namespace

std::vector<BranchTarget> allowed_targets(const CentralCharge& cc, KacLabel label) {
    if (label.r < 1 || label.s < 1) throw InvalidParameters("label must be in the first quadrant");
    Rational h1 = conformal_weight(cc, label.r, label.s);
    Rational root = rat(label.r) * cc.t - rat(label.s);

    std::vector<BranchTarget> out;
    out.push_back(make_branch(cc, SqrtBranch::Plus, h1, root, KacLabel{label.r, label.s + 1}));
    out.push_back(make_branch(cc, SqrtBranch::Minus, h1, -root, KacLabel{label.r, label.s - 1}));
    return out;
}

std::vector<BranchTarget> allowed_targets_for_weight(const CentralCharge& cc, const Rational& h1) {
    if (auto label = label_for_weight(cc, h1)) return allowed_targets(cc, *label);

    Rational disc = rat(4) * cc.t * h1 + (cc.t - rat(1)) * (cc.t - rat(1));
    if (disc < 0) throw NotKacWeight("discriminant is negative");
    mpz_class num = disc.get_num(), den = disc.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw NotKacWeight("discriminant is not a rational square");
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational root(rn, rd);
    root.canonicalize();

    std::vector<BranchTarget> out;
    out.push_back(make_branch(cc, SqrtBranch::Plus, h1, root, std::nullopt));
    out.push_back(make_branch(cc, SqrtBranch::Minus, h1, -root, std::nullopt));
    return out;
}

PrimaryFieldCoefficients build_primary_coefficients(const CentralCharge& cc, KacLabel label,
                                                    SqrtBranch branch, long N) {
    if (N < 0) throw InvalidParameters("need N >= 0");
    auto targets = allowed_targets(cc, label);
    const BranchTarget& b = (branch == SqrtBranch::Plus) ? targets[0] : targets[1];
    if (!b.admissible)
        throw InadmissibleBranch("coefficient recursion hits a zero factor at level " +
                                 rat_str(b.sqrt_disc / cc.t));

    PrimaryFieldCoefficients out;
    out.cc = cc;
    out.source = label;
    out.branch = branch;
    out.h1 = conformal_weight(cc, label.r, label.s);
    out.h2 = b.h2;
    out.h12 = conformal_weight(cc, 1, 2);
    out.sqrt_disc = b.sqrt_disc;
    out.N = N;

    VirasoroAction action(cc.c, out.h2);
    out.phis.push_back(pbw_monomial(cc.c, out.h2, {}));
    for (long k = 1; k <= N; ++k) {
        PBWVector sum = pbw_zero(cc.c, out.h2, k);
        for (long i = 1; i <= k; ++i)
            sum = pbw_add(sum, action.act(-i, out.phis[static_cast<size_t>(k - i)]));
        Rational factor = rat(k) * (cc.t * rat(k) - b.sqrt_disc);
        out.phis.push_back(pbw_scale(rat(1) / factor, sum));
    }
    return out;
}

bool verify_primary_condition(const PrimaryFieldCoefficients& coeffs, long M) {
    if (M > coeffs.N) throw InvalidParameters("condition window exceeds built coefficients");
    VirasoroAction action(coeffs.cc.c, coeffs.h2);
    for (long k = 0; k <= M; ++k) {
        const PBWVector& phi = coeffs.phis[static_cast<size_t>(k)];
        PBWVector l0 = action.act(0, phi);
        PBWVector want0 = pbw_scale(-(coeffs.h2 + rat(k)), phi);
        if (!pbw_add(l0, want0).coeffs.empty()) return false;
        for (long m = 1; m <= M; ++m) {
            PBWVector lm = action.act(m, phi);
            if (k < m) {
                if (!lm.coeffs.empty()) return false;
                continue;
            }
            Rational scale = rat(k) + rat(m) * (coeffs.h12 - rat(1)) + coeffs.h2 - coeffs.h1;
            PBWVector want = pbw_scale(-scale, coeffs.phis[static_cast<size_t>(k - m)]);
            if (!pbw_add(lm, want).coeffs.empty()) return false;
        }
    }
    return true;
}

namespace {

/*
 * Image coefficients of source monomials under the field: a lowering mode on
 * the source side moves across the field, trading L_{-m} w for a level shift
 * plus a scalar multiple. The largest mode is peeled first and results are
 * memoized per suffix.
 */
class DescentSeries {
public:
    explicit DescentSeries(const PrimaryFieldCoefficients& coeffs)
        : m_coeffs(coeffs),
          m_action(coeffs.cc.c, coeffs.h2),
          m_h(coeffs.h2 - coeffs.h12 - coeffs.h1) {}

    const PBWVector& psi(const Partition& nu, long j) {
        auto key = std::make_pair(nu, j);
        auto it = m_memo.find(key);
        if (it != m_memo.end()) return it->second;

        PBWVector out;
        if (nu.empty()) {
            out = m_coeffs.phis[static_cast<size_t>(j)];
        } else {
            long m = nu.front();
            Partition rest(nu.begin() + 1, nu.end());
            long rest_level = 0;
            for (long part : rest) rest_level += part;
            out = pbw_zero(m_coeffs.cc.c, m_coeffs.h2, j);
            if (j - m >= 0) out = pbw_add(out, m_action.act(-m, psi(rest, j - m)));
            Rational scale = rat(1 - m) * m_coeffs.h12 + m_h - rat(rest_level) + rat(j);
            out = pbw_add(out, pbw_scale(-scale, psi(rest, j)));
            out.level = j;
        }
        return m_memo.emplace(std::move(key), std::move(out)).first->second;
    }

private:
    const PrimaryFieldCoefficients& m_coeffs;
    VirasoroAction m_action;
    Rational m_h;
    std::map<std::pair<Partition, long>, PBWVector> m_memo;
};

} // namespace

bool descends_to_kac_quotient(const PrimaryFieldCoefficients& coeffs, long N) {
    const CentralCharge& cc = coeffs.cc;
    long r = coeffs.source.r, s = coeffs.source.s;
    if (r > cc.p && s > cc.q)
        throw InvalidParameters("source must satisfy r <= p or s <= q");
    long s_t = (coeffs.branch == SqrtBranch::Plus) ? s + 1 : s - 1;
    if (s_t == 0) return true; /* the target quotient collapses entirely */
    long target_level = r * s_t;
    if (N < target_level)
        throw LevelTooSmall("image window ends below level " + std::to_string(target_level));
    if (N > coeffs.N) throw InvalidParameters("descent window exceeds built coefficients");

    auto source_sing = singular_vectors(cc.c, coeffs.h1, r * s);
    if (source_sing.empty())
        throw NoSingularVector("source carries no singular vector at its own level");
    auto target_sing = singular_vectors(cc.c, coeffs.h2, target_level);

    DescentSeries series(coeffs);
    VirasoroAction action(cc.c, coeffs.h2);
    for (long j = 0; j <= N; ++j) {
        SpanBuilder<Rational> span(static_cast<long>(level_basis(j).size()));
        if (j >= target_level) {
            for (const auto& gen : target_sing)
                for (const auto& mu : level_basis(j - target_level)) {
                    PBWVector w = gen;
                    for (auto it = mu.rbegin(); it != mu.rend(); ++it) w = action.act(-*it, w);
                    span.insert(pbw_coordinates(w));
                }
        }
        for (const auto& gen : source_sing) {
            PBWVector image = pbw_zero(cc.c, coeffs.h2, j);
            for (const auto& [nu, x] : gen.coeffs)
                image = pbw_add(image, pbw_scale(x, series.psi(nu, j)));
            image.level = j;
            if (!span.contains(pbw_coordinates(image))) return false;
        }
    }
    return true;
}

FockIntertwinerBlock::FockIntertwinerBlock(QuadExt lambda, QuadExt mu, long N)
    : m_lambda(std::move(lambda)), m_mu(std::move(mu)), m_sum(m_lambda + m_mu), m_N(N) {
    if (N < 0) throw InvalidParameters("need N >= 0");
}

const FockVector& FockIntertwinerBlock::theta(const Partition& u, const Partition& w, long j) {
    auto key = std::make_tuple(u, w, j);
    auto it = m_memo.find(key);
    if (it != m_memo.end()) return it->second;

    FockVector out = fock_zero(m_sum, j < 0 ? 0 : j);
    if (j >= 0 && !w.empty()) {
        /* move the deepest mode of w across the vertex operator */
        long k = w.front();
        Partition rest(w.begin() + 1, w.end());
        out = fock_add(out, heis_act(-k, theta(u, rest, j - k)));
        out = fock_add(out, fock_scale(-m_lambda, theta(u, rest, j)));
        for (size_t a = 0; a < u.size(); ++a) {
            long i = u[a];
            if (a > 0 && u[a - 1] == i) continue; /* one term per distinct part */
            long mult = static_cast<long>(std::count(u.begin(), u.end(), i));
            Partition usub;
            usub.reserve(u.size() - 1);
            bool dropped = false;
            for (long part : u) {
                if (!dropped && part == i) {
                    dropped = true;
                    continue;
                }
                usub.push_back(part);
            }
            QuadExt coeff(rat_binom_neg(k, i) * rat(i * mult));
            out = fock_add(out, fock_scale(-coeff, theta(usub, rest, j)));
        }
        out.level = j;
    } else if (j >= 0 && !u.empty()) {
        /* normal ordering of the mode dressing on the incoming side */
        long n = u.front();
        Partition rest(u.begin() + 1, u.end());
        for (long i = 0; j - n - i >= 0; ++i) {
            FockVector part = heis_act(-(n + i), theta(rest, {}, j - n - i));
            out = fock_add(out, fock_scale(QuadExt(rat_binom(n + i - 1, i)), part));
        }
        QuadExt tail = (n % 2 == 0) ? m_mu : -m_mu;
        out = fock_add(out, fock_scale(-tail, theta(rest, {}, j)));
        out.level = j;
    } else if (j >= 0) {
        /* exponential of the creation half of the current */
        for (const auto& nu : level_basis(j)) {
            Rational z(1);
            long runs = 1;
            for (size_t a = 0; a < nu.size(); ++a) {
                if (a > 0 && nu[a] == nu[a - 1])
                    ++runs;
                else
                    runs = 1;
                z *= rat(nu[a]) * rat(runs);
            }
            QuadExt coeff = qpow(m_lambda, static_cast<long>(nu.size())) * QuadExt(rat(1) / z);
            if (!coeff.is_zero()) out.coeffs[nu] = coeff;
        }
    }
    return m_memo.emplace(std::move(key), std::move(out)).first->second;
}

FockVector FockIntertwinerBlock::theta_vec(const FockVector& u, const FockVector& w, long j) {
    FockVector out = fock_zero(m_sum, j < 0 ? 0 : j);
    for (const auto& [ku, xu] : u.coeffs)
        for (const auto& [kw, xw] : w.coeffs)
            out = fock_add(out, fock_scale(xu * xw, theta(ku, kw, j)));
    return out;
}

FockIntertwinerBlock fock_intertwiner_block(const CentralCharge& cc, const QuadExt& lambda,
                                            const QuadExt& mu, long N) {
    (void)cc;
    return FockIntertwinerBlock(lambda, mu, N);
}

std::vector<long long> kac_image_graded_dims(const CentralCharge& cc, long r, long s, long r2,
                                             long s2, long N) {
    if (r < 1 || s < 1 || r2 < 1 || s2 < 1) throw InvalidParameters("labels must be positive");
    if (N < 0) throw InvalidParameters("need N >= 0");

    QuadExt lambda = heisenberg_weight(cc, r, s);
    QuadExt mu = heisenberg_weight(cc, r2, s2);
    auto left = kac_basis(cc, r, s, N);
    auto right = kac_basis(cc, r2, s2, N);
    auto target = kac_basis(cc, r + r2 - 1, s + s2 - 1, N);
    auto target_dims = kac_dims(target);

    FockIntertwinerBlock block(lambda, mu, N);
    std::vector<long long> dims(static_cast<size_t>(N + 1), 0);
    for (long n = 0; n <= N; ++n) {
        SpanBuilder<QuadExt> target_span(static_cast<long>(level_basis(n).size()));
        for (const auto& v : target.levels[static_cast<size_t>(n)])
            target_span.insert(fock_coordinates(v));

        SpanBuilder<QuadExt> image(static_cast<long>(level_basis(n).size()));
        bool done = false;
        /* widen the argument window until the image fills the target level */
        for (long cap = 0; cap <= N && !done; ++cap) {
            for (long lu = 0; lu <= cap && !done; ++lu) {
                for (long lw = 0; lw <= cap && !done; ++lw) {
                    if (std::max(lu, lw) != cap) continue;
                    for (const auto& u : left.levels[static_cast<size_t>(lu)]) {
                        for (const auto& w : right.levels[static_cast<size_t>(lw)]) {
                            FockVector v = block.theta_vec(u, w, n);
                            auto coords = fock_coordinates(v);
                            if (!target_span.contains(coords))
                                throw InvalidParameters(
                                    "vertex-operator coefficient escapes the target submodule");
                            image.insert(std::move(coords));
                            if (image.rank() == target_dims[static_cast<size_t>(n)]) {
                                done = true;
                                break;
                            }
                        }
                        if (done) break;
                    }
                }
            }
        }
        dims[static_cast<size_t>(n)] = image.rank();
    }
    return dims;
}

TruncatedSeries verify_bpz_hypergeometric(long p, long N) {
    if (p < 3 || p % 2 == 0) throw InvalidP("need odd p >= 3");
    if (N < 2) throw InvalidParameters("need order N >= 2");

    TruncatedSeries f("u", N);
    Rational ck(1);
    f.set_coeff(0, ck);
    for (long k = 0; k < N; ++k) {
        ck *= rat(p + 2 * k, 2) * rat(3 * p - 2 + 2 * k, 2);
        ck /= rat(p + k) * rat(1 + k);
        f.set_coeff(k + 1, ck);
    }

    TruncatedSeries f1 = f.derivative();
    TruncatedSeries f2 = f1.derivative();
    long M = N - 2;
    TruncatedSeries u_poly("u", M);
    if (M >= 1) u_poly.set_coeff(1, rat(1));
    TruncatedSeries one("u", M);
    one.set_coeff(0, rat(1));

    TruncatedSeries residual = u_poly * (one - u_poly) * f2.truncate(M);
    residual = residual + rat(p) * ((one - rat(2) * u_poly) * f1.truncate(M));
    residual = residual + rat(p, 2) * (rat(2 - 3 * p, 2) * f.truncate(M));
    return residual;
}

RigidityConstants rigidity_constants(const CentralCharge& cc, long precision_bits) {
    long prec = precision_bits > 0 ? precision_bits : 256;
    MpReal pi = MpReal::pi(prec);
    MpReal p = MpReal::from_long(cc.p, prec);
    MpReal q = MpReal::from_long(cc.q, prec);

    RigidityConstants out{MpReal(prec), MpReal(prec), MpReal(prec)};
    MpReal minus_two = MpReal::from_long(-2, prec);
    out.d_K12 = minus_two * (p * pi / q).cos();
    out.d_K21 = minus_two * (q * pi / p).cos();

    if (cc.q >= 3) {
        out.R_pairing =
            MpReal::from_rational(rat(2 * cc.p - cc.q, cc.p), prec) / (p * pi / q).cos();
    } else {
        /* q = 2 sits on a zero of the cosine; the pairing degenerates to Gamma values */
        MpReal numer = MpReal::from_rational(rat(4 * (1 - cc.p), cc.p), prec) *
                       MpReal::factorial(static_cast<unsigned long>(cc.p - 2), prec);
        MpReal denom = MpReal::from_rational(rat(cc.p, 2), prec).gamma_fn() *
                       MpReal::from_rational(rat(3 * cc.p - 2, 2), prec).gamma_fn();
        out.R_pairing = numer / denom;
    }
    return out;
}

} // namespace vir

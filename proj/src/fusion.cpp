#include "vir/fusion.hpp"

#include <set>
#include <sstream>
#include <vector>

#include "vir/errors.hpp"
#include "vir/fock.hpp"
#include "vir/verma.hpp"

namespace vir {

SimpleLabel simple_label(const CentralCharge& cc, long r, long s) {
    KacLabel canon = normalize_label(cc, r, s).canonical;
    return SimpleLabel{canon.r, canon.s};
}

GrothendieckClass class_add(const GrothendieckClass& a, const GrothendieckClass& b) {
    GrothendieckClass out = a;
    for (const auto& [lab, mult] : b) out[lab] += mult;
    return out;
}

long class_total(const GrothendieckClass& c) {
    long total = 0;
    for (const auto& [lab, mult] : c) total += mult;
    return total;
}

bool class_contains(const GrothendieckClass& big, const GrothendieckClass& small) {
    for (const auto& [lab, mult] : small) {
        auto it = big.find(lab);
        if (it == big.end() || it->second < mult) return false;
    }
    return true;
}

std::string class_str(const GrothendieckClass& c) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [lab, mult] : c) {
        if (!first) os << ", ";
        first = false;
        os << "(" << lab.r << "," << lab.s << "):" << mult;
    }
    os << "}";
    return os.str();
}

GrothendieckClass kac_class(const CentralCharge& cc, long r, long s) {
    GrothendieckClass out;
    if (r < 1 || s < 1) return out;
    ModuleStructure st = kac_structure(cc, r, s);
    for (const KacLabel& f : st.factors) out[simple_label(cc, f.r, f.s)] += 1;
    return out;
}

FusionOutcome fuse_k12_kac(const CentralCharge& cc, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("fusion labels need r,s >= 1");
    FusionOutcome out;
    out.sub = KacLabel{r, s - 1};
    out.quotient = KacLabel{r, s + 1};
    out.factors = class_add(kac_class(cc, r, s - 1), kac_class(cc, r, s + 1));
    out.splits = (s % cc.q != 0);
    out.logarithmic = !out.splits;
    if (!out.splits) {
        /* staggered column: one module glued over a rank-two zero-mode block */
        if (r <= cc.p)
            out.indecomposable = true;
        else
            out.indecomposable = std::nullopt;
        out.notes = "non-split extension with non-diagonalizable zero mode";
    } else if (s == 1) {
        /* the lowered end vanishes, so the product is the raised module */
        out.indecomposable = true;
        out.notes = "sub vanishes; product is the module named (r,2)";
    } else {
        out.indecomposable = false;
        out.notes = "direct sum of the two ends";
    }
    return out;
}

FusionOutcome fuse_k21_kac(const CentralCharge& cc, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("fusion labels need r,s >= 1");
    FusionOutcome out;
    out.sub = KacLabel{r - 1, s};
    out.quotient = KacLabel{r + 1, s};
    out.factors = class_add(kac_class(cc, r - 1, s), kac_class(cc, r + 1, s));
    out.splits = (r % cc.p != 0);
    out.logarithmic = !out.splits;
    if (!out.splits) {
        if (s <= cc.q)
            out.indecomposable = true;
        else
            out.indecomposable = std::nullopt;
        out.notes = "non-split extension with non-diagonalizable zero mode";
    } else if (r == 1) {
        out.indecomposable = true;
        out.notes = "sub vanishes; product is the module named (2,s)";
    } else {
        out.indecomposable = false;
        out.notes = "direct sum of the two ends";
    }
    return out;
}

IsoProduct fuse_kr1_k1s(const CentralCharge& cc, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("fusion labels need r,s >= 1");
    IsoProduct out;
    out.factors = kac_class(cc, r, s);
    out.isomorphism = true;
    return out;
}

FusionOutcome fuse_k12_simple(const CentralCharge& cc, const SimpleLabel& label) {
    if (label.r < 1 || label.s < 1) throw InvalidParameters("fusion labels need r,s >= 1");
    SimpleLabel lab = simple_label(cc, label.r, label.s);
    const long q = cc.q;
    const long s0 = lab.s % q;
    if (s0 == 0) {
        /* q-divisible column: the simple module coincides with the full
           module of its label, so the product is the staggered extension */
        return fuse_k12_kac(cc, lab.r, lab.s);
    }
    FusionOutcome out;
    out.splits = true;
    out.logarithmic = false;
    SimpleLabel lower = (lab.s > 1) ? simple_label(cc, lab.r, lab.s - 1)
                                    : SimpleLabel{lab.r, 0};
    if (s0 == q - 1) {
        /* raising walks off the column strip, so only the lowered simple
           survives in the product */
        out.sub = KacLabel{lower.r, lower.s};
        out.quotient = KacLabel{lab.r, 0};
        if (lab.s > 1) out.factors[lower] += 1;
        out.indecomposable = (class_total(out.factors) == 1);
        out.notes = out.factors.empty() ? "product vanishes" : "single simple factor";
        return out;
    }
    SimpleLabel upper = simple_label(cc, lab.r, lab.s + 1);
    out.sub = KacLabel{lower.r, lower.s};
    out.quotient = KacLabel{upper.r, upper.s};
    if (lab.s > 1) out.factors[lower] += 1;
    out.factors[upper] += 1;
    out.indecomposable = (class_total(out.factors) == 1);
    out.notes = (class_total(out.factors) == 1)
                    ? "single simple factor"
                    : "direct sum of the neighbouring simples";
    return out;
}

ZhuConstraint zhu_constraint(const CentralCharge& cc, FuseFirst first, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("fusion labels need r,s >= 1");
    Rational r1, r2;
    bool mixed;
    if (first == FuseFirst::K12) {
        r1 = conformal_weight(cc, r, s - 1);
        r2 = conformal_weight(cc, r, s + 1);
        mixed = (s % cc.q == 0);
    } else {
        r1 = conformal_weight(cc, r - 1, s);
        r2 = conformal_weight(cc, r + 1, s);
        mixed = (r % cc.p == 0);
    }
    ZhuConstraint out;
    out.roots = {r1, r2};
    out.poly = {r1 * r2, -(r1 + r2), rat(1)};
    if (!mixed)
        out.kind = ZhuCase::TwoSemisimple;
    else if (r * cc.q == s * cc.p)
        out.kind = ZhuCase::JordanBlock;
    else
        out.kind = ZhuCase::SingleEigenvalue;
    return out;
}

RigidityStatus rigidity_status(const CentralCharge& cc, long r, long s) {
    if (r < 1 || s < 1) throw InvalidParameters("fusion labels need r,s >= 1");
    if (r <= cc.p && s <= cc.q) return RigidityStatus::RigidSelfDual;
    if (s == cc.q + 1 && r <= cc.p - 1) return RigidityStatus::NotRigid;
    if (r == cc.p + 1 && s <= cc.q - 1) return RigidityStatus::NotRigid;
    return RigidityStatus::Open;
}

std::string class_additivity_failure(const CentralCharge& cc, long r, long s,
                                     const GrothendieckClass& claimed) {
    GrothendieckClass expect =
        class_add(kac_class(cc, r, s - 1), kac_class(cc, r, s + 1));
    if (claimed == expect) return "";
    std::ostringstream os;
    os << "factor multiset for the product at (" << r << "," << s << ") is "
       << class_str(claimed) << " but the ends sum to " << class_str(expect);
    return os.str();
}

namespace {

/* label multiset under repeated products with a table generator */
using LabelMultiset = std::map<std::pair<long, long>, long>;

LabelMultiset product_step(const LabelMultiset& in, bool column_direction) {
    LabelMultiset out;
    for (const auto& [lab, mult] : in) {
        auto [a, b] = lab;
        if (column_direction) {
            if (b - 1 >= 1) out[{a, b - 1}] += mult;
            out[{a, b + 1}] += mult;
        } else {
            if (a - 1 >= 1) out[{a - 1, b}] += mult;
            out[{a + 1, b}] += mult;
        }
    }
    return out;
}

/* exact graded dimensions against the character sum of the factors */
std::string kac_character_failure(const CentralCharge& cc, long a, long b, long N) {
    std::vector<long long> dims = kac_dims(kac_basis(cc, a, b, N));
    ModuleStructure st = kac_structure(cc, a, b);
    Rational base = conformal_weight(cc, a, b);
    std::vector<long long> expect(static_cast<size_t>(N + 1), 0);
    for (size_t i = 0; i < st.factors.size(); ++i) {
        Rational gap = st.weights[i] - base;
        if (!is_integer(gap) || gap < 0) {
            std::ostringstream os;
            os << "factor weight " << rat_str(st.weights[i]) << " of (" << a << ","
               << b << ") does not sit a nonnegative integer above "
               << rat_str(base);
            return os.str();
        }
        long g = static_cast<long>(gap.get_num().get_si());
        if (g > N) continue;
        std::vector<long long> ch = simple_character(cc, st.factors[i], N - g);
        for (long n = g; n <= N; ++n)
            expect[static_cast<size_t>(n)] += ch[static_cast<size_t>(n - g)];
    }
    for (long n = 0; n <= N; ++n) {
        if (dims[static_cast<size_t>(n)] != expect[static_cast<size_t>(n)]) {
            std::ostringstream os;
            os << "graded dimension of (" << a << "," << b << ") at level " << n
               << " is " << dims[static_cast<size_t>(n)]
               << " but the factor characters sum to "
               << expect[static_cast<size_t>(n)];
            return os.str();
        }
    }
    return "";
}

} // namespace

ConsistencyReport check_grothendieck_consistency(const CentralCharge& cc, long rmax,
                                                 long smax) {
    if (rmax < 1 || smax < 1) throw InvalidParameters("consistency bounds need >= 1");
    ConsistencyReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.first_failure = msg;
    };
    std::set<std::pair<long, long>> char_checked;
    for (long r = 1; r <= rmax && rep.ok; ++r) {
        for (long s = 1; s <= smax && rep.ok; ++s) {
            FusionOutcome row = fuse_k12_kac(cc, r, s);
            std::string msg = class_additivity_failure(cc, r, s, row.factors);
            rep.checks += 1;
            if (!msg.empty()) {
                fail(msg);
                break;
            }
            FusionOutcome col = fuse_k21_kac(cc, r, s);
            GrothendieckClass mirror =
                class_add(kac_class(cc, r - 1, s), kac_class(cc, r + 1, s));
            rep.checks += 1;
            if (col.factors != mirror) {
                std::ostringstream os;
                os << "factor multiset for the mirrored product at (" << r << ","
                   << s << ") is " << class_str(col.factors)
                   << " but the ends sum to " << class_str(mirror);
                fail(os.str());
                break;
            }

            /* reach (r,s) from (1,1) by iterated products; the class of the
               target divides into the total class of the iterate */
            LabelMultiset reached{{{1, 1}, 1}};
            for (long k = 1; k < r; ++k) reached = product_step(reached, false);
            for (long k = 1; k < s; ++k) reached = product_step(reached, true);
            GrothendieckClass total;
            for (const auto& [lab, mult] : reached) {
                GrothendieckClass piece = kac_class(cc, lab.first, lab.second);
                for (const auto& [sl, m] : piece) total[sl] += m * mult;
            }
            rep.checks += 1;
            if (!class_contains(total, kac_class(cc, r, s))) {
                std::ostringstream os;
                os << "iterated products from (1,1) miss factors of (" << r << ","
                   << s << "): reached " << class_str(total);
                fail(os.str());
                break;
            }

            /* grading bound: the ends of the sequence cannot outweigh twice
               the middle */
            rep.checks += 1;
            if (r * (s - 1) + r * (s + 1) > 2 * r * s) {
                std::ostringstream os;
                os << "sequence ends at (" << r << "," << s
                   << ") outweigh the product";
                fail(os.str());
                break;
            }

            /* character identity for every module the sequences name */
            const std::pair<long, long> ends[4] = {
                {r, s - 1}, {r, s + 1}, {r - 1, s}, {r + 1, s}};
            for (const auto& [a, b] : ends) {
                if (a < 1 || b < 1) continue;
                if (!char_checked.insert({a, b}).second) continue;
                std::string cmsg = kac_character_failure(cc, a, b, 8);
                rep.checks += 1;
                if (!cmsg.empty()) {
                    fail(cmsg);
                    break;
                }
            }
        }
    }

    /* wall products: the module at (mp+r, q) filters with a simple sub and
       quotient, so its product class splits into four shifted classes with
       eight factors, matching the eight factors of the two sequence ends */
    for (long r = 1; r <= cc.p - 1 && rep.ok; ++r) {
        for (long m = 1; m * cc.p + r <= rmax && rep.ok; ++m) {
            const long q = cc.q;
            GrothendieckClass filt = class_add(
                class_add(kac_class(cc, r, (m + 1) * q - 1),
                          kac_class(cc, r, (m + 1) * q + 1)),
                class_add(kac_class(cc, cc.p - r, m * q - 1),
                          kac_class(cc, cc.p - r, m * q + 1)));
            GrothendieckClass ends = class_add(kac_class(cc, m * cc.p + r, q - 1),
                                               kac_class(cc, m * cc.p + r, q + 1));
            rep.checks += 1;
            if (class_total(filt) != 8 || class_total(ends) != 8 || filt != ends) {
                std::ostringstream os;
                os << "wall product at (" << m * cc.p + r
                   << "," << q << ") has filtration class " << class_str(filt)
                   << " against sequence ends " << class_str(ends);
                fail(os.str());
            }
        }
    }
    return rep;
}

} // namespace vir

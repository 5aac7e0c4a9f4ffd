#ifndef VIR_RATIONAL_HPP
#define VIR_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

#include "vir/errors.hpp"

namespace vir {

/*
 * Exact rational scalar. mpq_class keeps results canonical (lowest terms,
 * positive denominator) through arithmetic; the only trap is the two-argument
 * constructor, which does not canonicalize, so construction goes through rat().
 */
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational x(num, den);
    x.canonicalize();
    return x;
}

inline bool is_integer(const Rational& x) {
    return x.get_den() == 1;
}

/* num/den form, denominator always present so output stays unambiguous. */
inline std::string rat_str(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational rat_parse(const std::string& text) {
    Rational x;
    if (x.set_str(text, 10) != 0) throw InvalidParameters("bad rational literal: " + text);
    x.canonicalize();
    return x;
}

} // namespace vir

#endif

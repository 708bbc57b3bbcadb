#ifndef VSEQ_RATIONAL_HPP
#define VSEQ_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace vseq {

/// Exact rational scalar. GMP keeps the coefficient arithmetic exact no
/// matter how badly intermediate expressions blow up.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational rat_pow(const Rational& base, int exp) {
    Rational acc = 1;
    Rational b = base;
    int e = exp;
    if (e < 0) {
        b = 1 / b;
        e = -e;
    }
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

/// "3", "-1/2", ...
inline std::string rat_str(const Rational& q) { return q.get_str(); }

inline double rat_double(const Rational& q) { return q.get_d(); }

} // namespace vseq

#endif

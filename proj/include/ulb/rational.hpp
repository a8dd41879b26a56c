#ifndef ULB_RATIONAL_HPP
#define ULB_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ulb {

// Exact rational numbers.  mpq_class is kept canonical (lowest terms,
// positive denominator) by construction; every value produced here goes
// through canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// a == b (mod 2), i.e. (a - b)/2 is an integer.
inline bool congruent_mod2(const Rational& a, const Rational& b) {
    Rational d = a - b;
    return d.get_den() == 1 && mpz_even_p(d.get_num().get_mpz_t());
}

// Reduce q modulo 2 into the half-open interval (-1, 1].
inline Rational reduce_mod2(const Rational& q) {
    // q - 2*ceil((q-1)/2) lies in (-1, 1].
    Rational t = (q - 1) / 2;
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return q - 2 * Rational(c);
}

// Serialization used by the JSON interfaces: "num/den", or "num" when integral.
inline std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

} // namespace ulb

#endif

#ifndef VCSPLP_RATIONAL_HPP
#define VCSPLP_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcsp {

// Exact arbitrary-precision rational. GMP keeps results of arithmetic in
// lowest terms with positive denominator as long as the operands are
// canonical; everything entering the library goes through make_rational or
// parse_rational, which canonicalize.
using Rational = mpq_class;

// Raised on malformed input: bad files, out-of-range labels, inconsistent
// dimensions. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an enumeration or problem-size cap is exceeded.
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p" or "p/q" with optional sign, q != 0.
Rational parse_rational(std::string_view text);

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 1.
std::string rational_to_string(const Rational& r);

}  // namespace vcsp

#endif

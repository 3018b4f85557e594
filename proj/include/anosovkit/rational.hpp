#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace anosovkit {

/// Exact rational scalar used by every certification and linear-algebra path.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "a", "-a/b", or a finite decimal such as "1.25" into a canonical
/// rational. Throws ParseError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text: "a" for integers, "a/b" (b > 0, reduced) otherwise.
std::string to_string(const Rational& q);

/// Smallest integer >= q and largest integer <= q.
BigInt ceil(const Rational& q);
BigInt floor(const Rational& q);

}  // namespace anosovkit

#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace lolasym {

// Exact rational arithmetic. mpq_class keeps the canonical form the rest of
// the engine relies on: always reduced, denominator > 0.
using Rational = mpq_class;

// Accepts "12", "-3", "0.25", "-1.5", "7/2". Decimal literals become p/10^k.
// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

// Integers print bare ("5", "-3"), everything else as "p/q".
std::string rat_to_string(const Rational& q);

// Exact decimal rendering when the denominator is of the form 2^a*5^b,
// otherwise falls back to "p/q". Used by the trace writer.
std::string rat_to_cell(const Rational& q);

inline Rational rat_int(long n) { return Rational(n); }
inline Rational rat_frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace lolasym

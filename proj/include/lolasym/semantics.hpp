#pragma once

#include <cstdint>
#include <vector>

#include "lolasym/spec_ast.hpp"
#include "lolasym/symexpr.hpp"

namespace lolasym {

// Per-instant knowledge about one input: a precise value, a closed interval
// (Real only), or nothing.
struct Reading {
  enum class Kind { Exact, Range, Unknown };
  Kind kind = Kind::Unknown;
  Value exact;  // Exact
  Rational lo;  // Range
  Rational hi;

  static Reading exact_of(Value v);
  static Reading range(Rational lo, Rational hi);
  static Reading unknown();
};

bool operator==(const Reading& a, const Reading& b);
inline bool operator!=(const Reading& a, const Reading& b) { return !(a == b); }

// Exact(v) → {x^t = v}; Range(lo,hi) → {lo ≤ x^t, x^t ≤ hi}; Unknown → {}.
// Rejects Range on Bool streams, sort-mismatched exact values, and lo > hi.
ConstraintSet encode_reading(const Specification& spec, uint32_t stream, int64_t t,
                             const Reading& r);

// Instantiates a stream expression at instant t: s[o|c] becomes the instant
// variable s^{t+o} when t+o ≥ 0, and the default c otherwise.  Real-valued ite
// must have been rewritten away first.
SymExpr to_symexpr(const Specification& spec, const StreamExpr& e, int64_t t);

// One defining equation y^t = ⟦E_y⟧(t) per output stream (delay streams
// included — their equations realize deep offsets).
ConstraintSet instantiate_step(const Specification& spec, int64_t t);

// Every assumption instantiated at t (assumptions hold at all instants).
ConstraintSet instantiate_assumptions(const Specification& spec, int64_t t);

// Namer resolving StreamAt variables to "<stream-name>^t".
VarNamer spec_namer(const Specification& spec);

// values[stream][t]; used by the reference interpreter and the test oracles.
using ConcreteTrace = std::vector<std::vector<Value>>;

// Reference denotational interpreter over fully known inputs: returns the
// trace with every output stream computed per the recursive stream semantics.
// `in` must carry `len` values for each non-output stream; output rows may be
// empty.  Handles arbitrary (unflattened) past offsets.
ConcreteTrace eval_concrete(const Specification& spec, const ConcreteTrace& in, int64_t len);

}  // namespace lolasym

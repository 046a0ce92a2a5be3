#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lolasym/semantics.hpp"
#include "lolasym/spec_ast.hpp"

namespace lolasym {

enum class Bool3 { False, True, Top };

Bool3 not3(Bool3 a);
Bool3 and3(Bool3 a, Bool3 b);
Bool3 or3(Bool3 a, Bool3 b);
Bool3 xor3(Bool3 a, Bool3 b);

// Closed interval; a missing side is unbounded.
struct Interval {
  std::optional<Rational> lo, hi;
};

// Non-relational abstract value: three-valued logic for Bool streams,
// interval arithmetic for Real streams.
struct AbsVal {
  Sort sort = Sort::Bool;
  Bool3 b = Bool3::Top;
  Interval iv;

  static AbsVal top(Sort s);
  static AbsVal of_value(const Value& v);
  static AbsVal of_bool3(Bool3 b);
  static AbsVal of_interval(Interval iv);

  bool determined() const;  // Bool3 decided, or degenerate interval
};

std::string abs_payload(const AbsVal& v);
// Record line in the monitor format with kind "abs".
std::string abs_line(const Specification& spec, int64_t t, uint32_t stream, const AbsVal& v);

// Per-step abstract interpreter over a flattened specification (real-valued
// ite handled natively by interval join, so run it on the un-rewritten form).
// Only per-instant range assumptions (comparisons of a stream at [now] with
// constants) refine values; anything else is reported in warnings() and
// otherwise ignored.
class IntervalMonitor {
 public:
  explicit IntervalMonitor(const Specification& spec);

  // One (stream, value) per non-synthetic output, declaration order.
  std::vector<std::pair<uint32_t, AbsVal>> step(const std::map<uint32_t, Reading>& readings);

  int64_t now() const { return t_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  AbsVal eval(const StreamExpr& e);

  const Specification& spec_;
  std::vector<uint32_t> order_;  // outputs in evaluation order
  struct RangeAsm {
    std::optional<Rational> lo, hi;
  };
  std::map<uint32_t, RangeAsm> ranges_;
  std::vector<std::string> warnings_;
  std::vector<AbsVal> prev_, cur_;
  int64_t t_ = 0;
};

}  // namespace lolasym

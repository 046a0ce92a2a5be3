#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lolasym/pruning.hpp"
#include "lolasym/semantics.hpp"
#include "lolasym/solver.hpp"
#include "lolasym/spec_ast.hpp"
#include "lolasym/symexpr.hpp"

namespace lolasym {

struct MonitorConfig {
  bool pruning = true;
  // Window of past instants whose assumption-referenced variables stay in the
  // frontier; -1 derives it from the specification's assumptions.
  int64_t lookback = -1;
  size_t node_budget = kDefaultNodeBudget;
  size_t enum_var_cap = 24;
};

enum class VerdictKind { Concrete, BoolTri, RealBounds, Residual, Revised };

struct Verdict {
  int64_t t = 0;
  uint32_t stream = 0;
  VerdictKind kind = VerdictKind::Residual;
  std::optional<Value> concrete;           // Concrete, or Revised to a value
  std::optional<bool> tri;                 // BoolTri / Revised: empty = unknown
  std::optional<Rational> lo, hi;          // RealBounds / Revised to bounds
  std::string residual;                    // Residual: printed expression
};

// One tab-separated record: t, stream, kind (val|tri|bounds|residual|revised),
// payload. Rationals print as p/q when the denominator is not 1.
std::string verdict_line(const Specification& spec, const Verdict& v);

// Online monitor over a flattened specification: each step instantiates the
// step equations and assumptions, ingests readings, propagates ground facts,
// emits one verdict per declared output, and (optionally) prunes the live set
// against the frontier.
class Monitor {
 public:
  Monitor(const Specification& spec, MonitorConfig config);

  // Readings are for input streams of the current instant only (atemporal
  // ingestion); a missing entry means Unknown.
  std::vector<Verdict> step(const std::map<uint32_t, Reading>& readings);
  std::vector<Verdict> step(const std::map<uint32_t, Reading>& readings, bool prune_now);

  // Re-queries every still-undetermined verdict against the current live set
  // and reports upgrades as "revised" records. Call while the information to
  // recover is still live (run() suppresses the final step's prune for this).
  std::vector<Verdict> finalize();

  int64_t now() const { return t_; }
  const ConstraintSet& live() const { return live_; }
  // measure(live) after each completed step
  const std::vector<size_t>& measure_series() const { return measures_; }
  size_t max_measure() const;

 private:
  struct Pending {
    int64_t t;
    uint32_t stream;
    VerdictKind kind;  // BoolTri (unknown), RealBounds, or Residual
  };

  void add_constraint(const SymExpr& e);
  void propagate();
  std::vector<InstantVar> frontier() const;
  Verdict emit_for(uint32_t stream, const SymExpr& rhs_now);

  const Specification& spec_;
  MonitorConfig cfg_;
  int64_t lookback_ = 0;
  int64_t t_ = 0;
  bool finalized_ = false;
  ConstraintSet live_;
  std::map<InstantVar, Value> bindings_;
  uint64_t fresh_ = 0;
  std::vector<Pending> pending_;
  std::vector<size_t> measures_;
  std::vector<uint32_t> assumed_streams_;  // streams referenced by assumptions
};

// Steps over the whole trace (suppressing the last prune), then finalizes.
// readings[t] maps input stream index to its reading at t.
struct RunResult {
  std::vector<Verdict> verdicts;  // step order, revised records last
  std::vector<size_t> measures;
  size_t max_measure = 0;
};
RunResult run(const Specification& spec, const std::vector<std::map<uint32_t, Reading>>& readings,
              const MonitorConfig& config);

}  // namespace lolasym

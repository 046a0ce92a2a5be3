#pragma once

#include <cstdint>
#include <vector>

#include "lolasym/symexpr.hpp"

namespace lolasym {

// Perfect: the projection of the solution set onto the relevant variables is
// preserved exactly.  Sound: it may only grow.
enum class PruneQuality { Perfect, Sound };

struct PruneResult {
  ConstraintSet constraints;
  size_t fresh_used = 0;  // fresh variables allocated from the caller's counter
  PruneQuality quality = PruneQuality::Perfect;
};

// Each strategy rewrites C into a set whose measure is bounded by a constant
// in the relevant-variable count, independent of how many instants fed C.
// Fresh variables are drawn from `next_fresh` (monotone per monitor run).
//
// Boolean strategy: value table of all R-projections of the models of C,
// columns deduplicated and sorted, encoded over k = ceil(log2(columns)) fresh
// Bool variables by minterms.  Result measure <= |R|*(c^2+1), asserted.
PruneResult prune_boolean(const ConstraintSet& C, const std::vector<InstantVar>& R,
                          uint64_t& next_fresh, size_t enum_var_cap = 24);

// Linear strategy: C must be a conjunction of linear equations.  Row-reduces,
// then re-expresses every constrained relevant variable over at most rank-many
// fresh Real variables.  Inconsistent input yields the false set.  Result
// measure <= rows*(2*rank+2) <= 2|R|^2+2|R|, asserted.
PruneResult prune_linear(const ConstraintSet& C, const std::vector<InstantVar>& R,
                         uint64_t& next_fresh);

// Mixed strategy (sound, not perfect): Boolean projection with comparison
// atoms abstracted to opaque selector variables, linear projection of the
// equation subset, and interval bounds l <= v <= g for each fresh Real
// variable computed from the full set joined with the linear rows.
PruneResult prune_mixed(const ConstraintSet& C, const std::vector<InstantVar>& R,
                        uint64_t& next_fresh, size_t enum_var_cap = 24);

// Dispatch on content: all-Boolean constraints with Boolean targets use the
// Boolean strategy, all-equation constraints with Real targets the linear one,
// anything else the sound mixed one.
PruneResult prune(const ConstraintSet& C, const std::vector<InstantVar>& R, uint64_t& next_fresh,
                  size_t enum_var_cap = 24);

}  // namespace lolasym

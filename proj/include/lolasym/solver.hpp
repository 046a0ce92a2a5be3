#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lolasym/symexpr.hpp"

namespace lolasym {

// All assignments over `vars` satisfying every constraint in C, in
// lexicographic order (vars[0] most significant, ff before tt).  Every
// variable occurring in C must be listed in vars; |vars| beyond var_cap
// signals a pruning bug and raises ResourceError.
std::vector<Assignment> enumerate_bool_models(const ConstraintSet& C,
                                              const std::vector<InstantVar>& vars,
                                              size_t var_cap = 24);

// The linear-equation system r_i = Σ_j coeffs[j]·columns[j] + offset, one row
// per defined variable; rows with lhs == nullopt are ground equations
// `ground = Σ coeffs·columns + offset` and participate in consistency only.
struct LinRow {
  std::optional<InstantVar> lhs;
  Rational ground;
  std::vector<Rational> coeffs;
  Rational offset;
};

struct LinearSystem {
  std::vector<InstantVar> columns;
  std::vector<LinRow> rows;
};

// rank plus a column basis of the lhs-row coefficient matrix N: basis is m×r
// with the same column span as N, and basis·change_of_basis = N (so fresh
// variables v = change_of_basis·s reproduce every row exactly).  Basis
// selection: source columns that are scalar multiples of each other are
// grouped (they influence every row identically); if the groups reach the
// rank, each group is one fresh variable.  Otherwise, at full row rank each
// row keeps its own fresh variable (which the box-bounding mixed strategy
// wants), and with dependent rows a maximal independent row subset serves as
// the basis.
struct GaussSolved {
  size_t rank = 0;
  std::vector<std::vector<Rational>> basis;
  std::vector<std::vector<Rational>> change_of_basis;
};

// nullopt iff the equation system (ground rows included) has no solution.
std::optional<GaussSolved> gaussian_solve(const LinearSystem& sys);

// In-place reduced row echelon form over the first `cols` entries of each row
// (entries beyond cols ride along, e.g. an augmented constant).  Pivots are
// the first nonzero column per row, scaled to 1 and cleared above and below.
// Returns the pivot column indices in order.
std::vector<size_t> rref(std::vector<std::vector<Rational>>& rows, size_t cols);

// Sound variable bounds over the models of C; exact and attained when C is a
// pure conjunction of linear atoms.  Non-conjunctive constraints are weakened
// to their conjunctively-entailed atoms.  empty = C has no models at all
// (the [+∞,−∞] sentinel).
struct Bounds {
  bool empty = false;
  std::optional<Rational> lo;  // nullopt = −∞
  std::optional<Rational> hi;  // nullopt = +∞
  bool lo_attained = false;
  bool hi_attained = false;
};

Bounds bounds_of(const ConstraintSet& C, const InstantVar& v);

inline constexpr size_t kDefaultNodeBudget = 500000;

// Valid: C ⊨ p.  Unsat: C ⊨ ¬p.  Contingent: neither.  Decided by
// propagate-and-branch search over the Boolean skeleton (linear atoms become
// selector variables) with exact Fourier–Motzkin feasibility at the leaves.
// Exceeding the branch-node budget raises ResourceError, never a wrong verdict.
enum class Entail { Valid, Unsat, Contingent };
Entail check_predicate(const ConstraintSet& C, const SymExpr& p,
                       size_t node_budget = kDefaultNodeBudget);

bool is_satisfiable(const ConstraintSet& C, size_t node_budget = kDefaultNodeBudget);

// SMT-LIB2 rendering of the query C ∧ ¬p, for cross-checking entailment
// results against an external solver by hand (debugging aid only).
std::string to_smtlib(const ConstraintSet& C, const SymExpr& p);

}  // namespace lolasym

#include "lolasym/solver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lolasym/errors.hpp"

namespace lolasym {

// --- Boolean model enumeration ---------------------------------------------------

std::vector<Assignment> enumerate_bool_models(const ConstraintSet& C,
                                              const std::vector<InstantVar>& vars,
                                              size_t var_cap) {
  if (vars.size() > var_cap)
    throw ResourceError("model enumeration over " + std::to_string(vars.size()) +
                        " variables exceeds the cap of " + std::to_string(var_cap) +
                        " (a pruning bound should have kept this small)");
  for (const auto& v : vars_of(C))
    require(std::find(vars.begin(), vars.end(), v) != vars.end(),
            "enumeration variable list must cover the constraint set");
  std::vector<Assignment> models;
  const size_t k = vars.size();
  for (uint64_t code = 0; code < (uint64_t(1) << k); ++code) {
    Assignment a;
    for (size_t i = 0; i < k; ++i)
      a.bools[vars[i]] = ((code >> (k - 1 - i)) & 1) != 0;  // vars[0] most significant
    bool ok = true;
    for (const auto& c : C) {
      auto v = eval_bool(c, a);
      require(v.has_value(), "enumeration hit an uncovered variable");
      if (!*v) {
        ok = false;
        break;
      }
    }
    if (ok) models.push_back(std::move(a));
  }
  return models;
}

// --- exact Gaussian elimination ----------------------------------------------------

std::vector<size_t> rref(std::vector<std::vector<Rational>>& rows, size_t cols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows.size(); ++col) {
    size_t sel = row;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[row], rows[sel]);
    Rational p = rows[row][col];
    for (auto& x : rows[row]) x /= p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == row || rows[i][col] == 0) continue;
      Rational f = rows[i][col];
      for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::optional<GaussSolved> gaussian_solve(const LinearSystem& sys) {
  const size_t n = sys.columns.size();

  // Consistency over all variables (row lhs variables included): each row
  // becomes  Σ coeffs·s − lhs + (offset − ground) = 0.
  {
    std::map<InstantVar, size_t> lhs_col;
    for (const auto& r : sys.rows)
      if (r.lhs && !lhs_col.count(*r.lhs)) {
        size_t next = lhs_col.size();
        lhs_col[*r.lhs] = next;
      }
    size_t width = n + lhs_col.size() + 1;
    std::vector<std::vector<Rational>> m;
    for (const auto& r : sys.rows) {
      std::vector<Rational> row(width, Rational(0));
      for (size_t j = 0; j < n; ++j) row[j] = r.coeffs[j];
      if (r.lhs)
        row[n + lhs_col[*r.lhs]] = Rational(-1);
      row[width - 1] = r.offset - (r.lhs ? Rational(0) : r.ground);
      m.push_back(std::move(row));
    }
    std::vector<size_t> piv = rref(m, width - 1);
    for (const auto& row : m) {
      bool zero = true;
      for (size_t j = 0; j + 1 < width; ++j)
        if (row[j] != 0) {
          zero = false;
          break;
        }
      if (zero && row[width - 1] != 0) return std::nullopt;
    }
  }

  // Rank and column basis of the lhs-row matrix N.
  std::vector<std::vector<Rational>> N;
  for (const auto& r : sys.rows)
    if (r.lhs) N.push_back(r.coeffs);
  const size_t m = N.size();

  std::vector<std::vector<Rational>> red = N;
  std::vector<size_t> piv = rref(red, n);
  GaussSolved out;
  out.rank = piv.size();

  // Columns that are scalar multiples of each other exert the same influence
  // on every row, so they can share one fresh variable.  When the classes are
  // no more numerous than the rank this grouping is an exact
  // re-parameterization, and it keeps fresh variables aligned with disjoint
  // source groups (which later bound extraction benefits from).
  {
    std::vector<size_t> reps;         // representative column per class
    std::vector<int64_t> cls(n, -1);  // column -> class, -1 for zero columns
    std::vector<Rational> scale(n, Rational(0));  // column = scale * rep
    for (size_t j = 0; j < n; ++j) {
      bool zero = true;
      for (size_t i = 0; i < m; ++i)
        if (N[i][j] != 0) {
          zero = false;
          break;
        }
      if (zero) continue;
      for (size_t k = 0; k < reps.size() && cls[j] < 0; ++k) {
        const size_t rj = reps[k];
        std::optional<Rational> ratio;
        bool parallel = true;
        for (size_t i = 0; i < m && parallel; ++i) {
          if (N[i][rj] == 0) {
            parallel = N[i][j] == 0;
          } else {
            Rational q = N[i][j] / N[i][rj];
            if (!ratio)
              ratio = q;
            else
              parallel = q == *ratio;
          }
        }
        if (parallel) {
          cls[j] = static_cast<int64_t>(k);
          scale[j] = *ratio;
        }
      }
      if (cls[j] < 0) {
        cls[j] = static_cast<int64_t>(reps.size());
        reps.push_back(j);
        scale[j] = Rational(1);
      }
    }
    if (reps.size() == out.rank) {
      out.basis.assign(m, std::vector<Rational>(out.rank, Rational(0)));
      for (size_t k = 0; k < out.rank; ++k)
        for (size_t i = 0; i < m; ++i) out.basis[i][k] = N[i][reps[k]];
      out.change_of_basis.assign(out.rank, std::vector<Rational>(n, Rational(0)));
      for (size_t j = 0; j < n; ++j)
        if (cls[j] >= 0) out.change_of_basis[static_cast<size_t>(cls[j])][j] = scale[j];
      return out;
    }
  }

  if (out.rank == m) {
    // Independent rows that cannot be column-grouped: use the row values
    // themselves as fresh variables, so later bound extraction boxes the
    // relevant variables directly.
    out.basis.assign(m, std::vector<Rational>(m, Rational(0)));
    for (size_t i = 0; i < m; ++i) out.basis[i][i] = Rational(1);
    out.change_of_basis = N;
    return out;
  }

  // Dependent rows: greedily pick a maximal independent row subset as the
  // basis and express every row over it (solve B^T a = N_i^T for each row).
  std::vector<size_t> chosen;
  {
    std::vector<std::vector<Rational>> acc;
    for (size_t i = 0; i < m; ++i) {
      std::vector<std::vector<Rational>> trial = acc;
      trial.push_back(N[i]);
      std::vector<std::vector<Rational>> tr = trial;
      if (rref(tr, n).size() == trial.size()) {
        acc = std::move(trial);
        chosen.push_back(i);
        if (chosen.size() == out.rank) break;
      }
    }
  }
  const size_t r = chosen.size();
  require(r == out.rank, "independent row subset smaller than rank");
  // Augmented transpose [B^T | N^T]: after reduction the pivot rows carry the
  // coefficients of each row of N over the chosen rows.
  std::vector<std::vector<Rational>> tt(n, std::vector<Rational>(r + m, Rational(0)));
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < r; ++k) tt[j][k] = N[chosen[k]][j];
    for (size_t i = 0; i < m; ++i) tt[j][r + i] = N[i][j];
  }
  std::vector<size_t> tp = rref(tt, r);
  require(tp.size() == r, "transpose lost rank");
  out.basis.assign(m, std::vector<Rational>(r, Rational(0)));
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k < r; ++k) out.basis[i][k] = tt[k][r + i];
  out.change_of_basis.assign(r, std::vector<Rational>(n, Rational(0)));
  for (size_t k = 0; k < r; ++k) out.change_of_basis[k] = N[chosen[k]];
  return out;
}

// --- linear-arithmetic core (Fourier–Motzkin) ------------------------------------

namespace {

constexpr size_t kFmAtomCap = 100000;

// aff ≤ 0, or aff < 0 when strict.
struct Ineq {
  AffineForm aff;
  bool strict = false;
};

bool ineq_less(const Ineq& a, const Ineq& b) {
  int c = compare(a.aff, b.aff);
  if (c != 0) return c < 0;
  return a.strict < b.strict;
}

struct LinState {
  std::vector<AffineForm> eqs;  // aff = 0
  std::vector<Ineq> ineqs;
  bool infeasible = false;

  void add_eq(AffineForm a) {
    if (infeasible) return;
    if (a.is_constant()) {
      if (a.constant != 0) infeasible = true;
      return;
    }
    eqs.push_back(std::move(a));
  }

  void add_ineq(AffineForm a, bool strict) {
    if (infeasible) return;
    if (a.is_constant()) {
      int s = sgn(a.constant);
      if (strict ? s >= 0 : s > 0) infeasible = true;
      return;
    }
    ineqs.push_back({std::move(a), strict});
  }

  void add_atom(CmpOp op, AffineForm a) {
    switch (op) {
      case CmpOp::Eq:
        add_eq(std::move(a));
        break;
      case CmpOp::Le:
        add_ineq(std::move(a), false);
        break;
      case CmpOp::Lt:
        add_ineq(std::move(a), true);
        break;
    }
  }
};

// aff with every occurrence of x replaced by rep (rep must not contain x).
AffineForm subst_var(const AffineForm& aff, const InstantVar& x, const AffineForm& rep) {
  Rational b = aff_coeff(aff, x);
  if (b == 0) return aff;
  return aff_add(aff, aff_scale(b, aff_sub(rep, AffineForm::of_var(x))));
}

// Removes every equation mentioning a variable other than `keep` by solving it
// and substituting; exact.  Remaining equations mention only `keep` (or are
// ground, already folded).
void substitute_eqs(LinState& st, const std::optional<InstantVar>& keep) {
  for (;;) {
    if (st.infeasible) return;
    size_t which = st.eqs.size();
    InstantVar x;
    for (size_t i = 0; i < st.eqs.size() && which == st.eqs.size(); ++i) {
      for (const auto& [v, c] : st.eqs[i].terms) {
        (void)c;
        if (!keep || !(v == *keep)) {
          which = i;
          x = v;
          break;
        }
      }
    }
    if (which == st.eqs.size()) return;
    AffineForm eq = st.eqs[which];
    st.eqs.erase(st.eqs.begin() + static_cast<long>(which));
    Rational a = aff_coeff(eq, x);
    // x = -(eq - a·x)/a
    AffineForm rep = aff_scale(Rational(-1) / a, aff_sub(eq, aff_scale(a, AffineForm::of_var(x))));
    std::vector<AffineForm> eqs = std::move(st.eqs);
    std::vector<Ineq> ineqs = std::move(st.ineqs);
    st.eqs.clear();
    st.ineqs.clear();
    for (auto& e : eqs) st.add_eq(subst_var(e, x, rep));
    for (auto& q : ineqs) st.add_ineq(subst_var(q.aff, x, rep), q.strict);
  }
}

// Eliminates every inequality variable other than `keep` by pairwise
// combination; exact projection onto keep (or full feasibility when no keep).
void fm_eliminate(LinState& st, const std::optional<InstantVar>& keep) {
  for (;;) {
    if (st.infeasible) return;
    // candidate variables with pos/neg occurrence counts
    std::map<InstantVar, std::pair<size_t, size_t>> occ;
    for (const auto& q : st.ineqs)
      for (const auto& [v, c] : q.aff.terms) {
        if (keep && v == *keep) continue;
        if (c > 0)
          occ[v].first++;
        else
          occ[v].second++;
      }
    if (occ.empty()) return;
    InstantVar x = occ.begin()->first;
    size_t best = occ.begin()->second.first * occ.begin()->second.second;
    for (const auto& [v, pn] : occ) {
      size_t cost = pn.first * pn.second;
      if (cost < best) {
        best = cost;
        x = v;
      }
    }
    std::vector<Ineq> uppers, lowers, rest;
    for (auto& q : st.ineqs) {
      Rational c = aff_coeff(q.aff, x);
      if (c > 0)
        uppers.push_back(std::move(q));  // x ≤ -rest/c
      else if (c < 0)
        lowers.push_back(std::move(q));
      else
        rest.push_back(std::move(q));
    }
    st.ineqs.clear();
    for (auto& q : rest) st.add_ineq(std::move(q.aff), q.strict);
    for (const auto& u : uppers)
      for (const auto& l : lowers) {
        Rational a = aff_coeff(u.aff, x);   // > 0
        Rational b = aff_coeff(l.aff, x);   // < 0
        // (-b)·upper + a·lower eliminates x
        AffineForm comb = aff_add(aff_scale(-b, u.aff), aff_scale(a, l.aff));
        st.add_ineq(std::move(comb), u.strict || l.strict);
        if (st.infeasible) return;
      }
    std::sort(st.ineqs.begin(), st.ineqs.end(), ineq_less);
    st.ineqs.erase(std::unique(st.ineqs.begin(), st.ineqs.end(),
                               [](const Ineq& a, const Ineq& b) {
                                 return !ineq_less(a, b) && !ineq_less(b, a);
                               }),
                   st.ineqs.end());
    if (st.ineqs.size() > kFmAtomCap)
      throw ResourceError("linear elimination exceeded the atom budget");
  }
}

bool lin_state_feasible(LinState st) {
  substitute_eqs(st, std::nullopt);
  fm_eliminate(st, std::nullopt);
  return !st.infeasible;
}

// Conjunctively-entailed comparison atoms of one constraint: a Cmp is itself
// entailed, an And entails each conjunct; anything else is skipped (sound
// weakening for bound computation).
void collect_atoms(const SymExpr& e, LinState& st) {
  if (e.kind() == NodeKind::Cmp) {
    st.add_atom(e.node().op, e.node().aff);
    return;
  }
  if (e.kind() == NodeKind::And)
    for (const auto& k : e.node().kids) collect_atoms(k, st);
}

}  // namespace

Bounds bounds_of(const ConstraintSet& C, const InstantVar& v) {
  Bounds out;
  if (C.contains_false()) {
    out.empty = true;
    return out;
  }
  LinState st;
  for (const auto& e : C) {
    collect_atoms(e, st);
    if (st.infeasible) break;
  }
  if (!st.infeasible) {
    substitute_eqs(st, v);
    // leftover equations mention only v: a·v + c = 0 pins it
    for (const auto& e : st.eqs) {
      Rational a = aff_coeff(e, v);
      require(a != 0, "equation survived substitution without the kept variable");
      st.add_ineq(e, false);
      st.add_ineq(aff_neg(e), false);
    }
    st.eqs.clear();
    fm_eliminate(st, v);
  }
  if (st.infeasible) {
    out.empty = true;
    return out;
  }
  for (const auto& q : st.ineqs) {
    Rational a = aff_coeff(q.aff, v);
    require(a != 0, "ground inequality survived elimination");
    Rational bound = -q.aff.constant / a;
    if (a > 0) {  // v ≤ bound (or <)
      if (!out.hi || bound < *out.hi) {
        out.hi = bound;
        out.hi_attained = !q.strict;
      } else if (bound == *out.hi) {
        out.hi_attained = out.hi_attained && !q.strict;
      }
    } else {  // v ≥ bound (or >)
      if (!out.lo || bound > *out.lo) {
        out.lo = bound;
        out.lo_attained = !q.strict;
      } else if (bound == *out.lo) {
        out.lo_attained = out.lo_attained && !q.strict;
      }
    }
  }
  if (out.lo && out.hi &&
      (*out.lo > *out.hi || (*out.lo == *out.hi && !(out.lo_attained && out.hi_attained)))) {
    out = Bounds{};
    out.empty = true;
  }
  return out;
}

// --- satisfiability and entailment ---------------------------------------------------

namespace {

struct FormulasLess {
  bool operator()(const std::vector<SymExpr>& a, const std::vector<SymExpr>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      int c = compare(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

using MemoKey = std::pair<std::vector<SymExpr>, std::map<size_t, bool>>;

struct MemoLess {
  bool operator()(const MemoKey& a, const MemoKey& b) const {
    FormulasLess fl;
    if (fl(a.first, b.first)) return true;
    if (fl(b.first, a.first)) return false;
    return a.second < b.second;
  }
};

struct SatSearch {
  size_t budget;
  size_t nodes = 0;
  uint64_t selector_base = 0;
  std::vector<SymExpr> atoms;  // selector i ↔ Cmp atoms[i]
  // Satisfiability of a residual depends only on the formula set and the atom
  // polarities fixed so far; recurrent specs collapse to few distinct keys.
  std::map<MemoKey, bool, MemoLess> memo;
  std::map<std::map<size_t, bool>, bool> leaf_memo;

  bool is_selector(const InstantVar& v) const {
    return v.kind == InstantVar::Kind::Fresh && v.fresh_id >= selector_base;
  }

  // Replaces every comparison atom by a fresh Bool selector variable.
  SymExpr abstract(const SymExpr& e, std::vector<std::pair<SymExpr, size_t>>& table) {
    const Node& n = e.node();
    switch (n.kind) {
      case NodeKind::BoolConst:
      case NodeKind::BoolVar:
        return e;
      case NodeKind::Cmp: {
        for (const auto& [atom, idx] : table)
          if (atom == e) return sym_var(InstantVar::fresh(selector_base + idx, Sort::Bool));
        size_t idx = atoms.size();
        atoms.push_back(e);
        table.emplace_back(e, idx);
        return sym_var(InstantVar::fresh(selector_base + idx, Sort::Bool));
      }
      case NodeKind::Not:
        return sym_not(abstract(n.kids[0], table));
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Xor: {
        std::vector<SymExpr> kids;
        for (const auto& k : n.kids) kids.push_back(abstract(k, table));
        if (n.kind == NodeKind::And) return sym_and(std::move(kids));
        if (n.kind == NodeKind::Or) return sym_or(std::move(kids));
        return sym_xor(std::move(kids));
      }
      case NodeKind::BoolIte:
        return sym_ite(abstract(n.kids[0], table), abstract(n.kids[1], table),
                       abstract(n.kids[2], table));
      case NodeKind::Affine:
        throw InternalError("Real expression inside a Boolean constraint");
    }
    throw InternalError("unreachable expression kind");
  }

  bool leaf_feasible(const std::map<size_t, bool>& sel) {
    auto hit = leaf_memo.find(sel);
    if (hit != leaf_memo.end()) return hit->second;
    bool out = leaf_feasible_raw(sel);
    leaf_memo.emplace(sel, out);
    return out;
  }

  bool leaf_feasible_raw(const std::map<size_t, bool>& sel) const {
    LinState st;
    std::vector<AffineForm> diseqs;
    for (const auto& [idx, val] : sel) {
      const Node& a = atoms[idx].node();
      if (val) {
        st.add_atom(a.op, a.aff);
      } else {
        switch (a.op) {
          case CmpOp::Le:
            st.add_ineq(aff_neg(a.aff), true);
            break;
          case CmpOp::Lt:
            st.add_ineq(aff_neg(a.aff), false);
            break;
          case CmpOp::Eq:
            diseqs.push_back(a.aff);
            break;
        }
      }
    }
    if (!lin_state_feasible(st)) return false;
    // A consistent conjunction avoids each excluded hyperplane iff it is not
    // contained in it; convexity lifts per-hyperplane avoidance to all at once.
    for (const auto& d : diseqs) {
      LinState lt = st;
      lt.add_ineq(d, true);
      if (lin_state_feasible(std::move(lt))) continue;
      LinState gt = st;
      gt.add_ineq(aff_neg(d), true);
      if (!lin_state_feasible(std::move(gt))) return false;
    }
    return true;
  }

  bool run(std::vector<SymExpr> fs, std::map<size_t, bool> sel) {
    // propagate units to fixpoint
    for (;;) {
      std::map<InstantVar, SymExpr> units;
      std::vector<SymExpr> rest;
      for (const auto& f : fs) {
        if (is_true(f)) continue;
        if (is_false(f)) return false;
        if (f.kind() == NodeKind::BoolVar) {
          auto it = units.find(f.node().var);
          if (it != units.end() && is_false(it->second)) return false;
          units[f.node().var] = sym_bool(true);
        } else if (f.kind() == NodeKind::Not && f.node().kids[0].kind() == NodeKind::BoolVar) {
          const InstantVar& v = f.node().kids[0].node().var;
          auto it = units.find(v);
          if (it != units.end() && is_true(it->second)) return false;
          units[v] = sym_bool(false);
        } else {
          rest.push_back(f);
        }
      }
      if (units.empty()) {
        fs = std::move(rest);
        break;
      }
      for (const auto& [v, val] : units)
        if (is_selector(v)) sel[v.fresh_id - selector_base] = is_true(val);
      std::vector<SymExpr> next;
      next.reserve(rest.size());
      for (const auto& f : rest) next.push_back(substitute(f, units));
      fs = std::move(next);
    }
    // The atom polarities fixed so far must already be arithmetically
    // consistent; extensions only add atoms, so an infeasible prefix closes
    // the whole branch.
    if (!sel.empty() && !leaf_feasible(sel)) return false;
    if (fs.empty()) return true;

    std::sort(fs.begin(), fs.end(), [](const SymExpr& a, const SymExpr& b) { return a < b; });
    MemoKey key(fs, sel);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (++nodes > budget)
      throw ResourceError("entailment search exceeded the node budget of " +
                          std::to_string(budget));

    std::optional<InstantVar> branch;
    for (const auto& f : fs) {
      std::set<InstantVar> vs;
      collect_vars(f, vs);
      if (!vs.empty() && (!branch || *vs.begin() < *branch)) branch = *vs.begin();
    }
    require(branch.has_value(), "constraint without variables survived folding");

    bool result = false;
    for (bool val : {false, true}) {
      std::map<InstantVar, SymExpr> m{{*branch, sym_bool(val)}};
      auto sel2 = sel;
      if (is_selector(*branch)) sel2[branch->fresh_id - selector_base] = val;
      std::vector<SymExpr> fs2;
      fs2.reserve(fs.size());
      for (const auto& f : fs) fs2.push_back(substitute(f, m));
      if (run(std::move(fs2), std::move(sel2))) {
        result = true;
        break;
      }
    }
    memo.emplace(std::move(key), result);
    return result;
  }
};

bool sat_formulas(const std::vector<SymExpr>& input, size_t budget) {
  SatSearch s;
  s.budget = budget;
  // selector ids start above every fresh id already present
  uint64_t max_fresh = 0;
  for (const auto& f : input) {
    std::set<InstantVar> vs;
    collect_vars(f, vs);
    for (const auto& v : vs)
      if (v.kind == InstantVar::Kind::Fresh) max_fresh = std::max(max_fresh, v.fresh_id + 1);
  }
  s.selector_base = max_fresh;
  std::vector<std::pair<SymExpr, size_t>> table;
  std::vector<SymExpr> fs;
  fs.reserve(input.size());
  for (const auto& f : input) fs.push_back(s.abstract(f, table));
  return s.run(std::move(fs), {});
}

}  // namespace

Entail check_predicate(const ConstraintSet& C, const SymExpr& p, size_t node_budget) {
  require(p.sort() == Sort::Bool, "entailment queries must be Boolean");
  std::vector<SymExpr> base(C.begin(), C.end());
  std::vector<SymExpr> with_not = base;
  with_not.push_back(sym_not(p));
  if (!sat_formulas(with_not, node_budget)) return Entail::Valid;
  std::vector<SymExpr> with_p = std::move(base);
  with_p.push_back(p);
  if (!sat_formulas(with_p, node_budget)) return Entail::Unsat;
  return Entail::Contingent;
}

bool is_satisfiable(const ConstraintSet& C, size_t node_budget) {
  return sat_formulas(std::vector<SymExpr>(C.begin(), C.end()), node_budget);
}

// --- SMT-LIB2 rendering ----------------------------------------------------------

namespace {

std::string smt_name(const InstantVar& v) {
  if (v.kind == InstantVar::Kind::Fresh) return "f" + std::to_string(v.fresh_id);
  return "|s" + std::to_string(v.stream) + "@" + std::to_string(v.time) + "|";
}

std::string smt_rat(const Rational& q) {
  bool neg = q < 0;
  Rational m = neg ? Rational(-q) : q;
  std::string body = m.get_den() == 1
                         ? m.get_num().get_str()
                         : "(/ " + m.get_num().get_str() + " " + m.get_den().get_str() + ")";
  return neg ? "(- " + body + ")" : body;
}

std::string smt_aff(const AffineForm& a) {
  if (a.terms.empty()) return smt_rat(a.constant);
  std::string out = "(+ " + smt_rat(a.constant);
  for (const auto& [v, c] : a.terms) out += " (* " + smt_rat(c) + " " + smt_name(v) + ")";
  return out + ")";
}

std::string smt_expr(const SymExpr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return n.bval ? "true" : "false";
    case NodeKind::BoolVar:
      return smt_name(n.var);
    case NodeKind::Not:
      return "(not " + smt_expr(n.kids[0]) + ")";
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      std::string out = n.kind == NodeKind::And ? "(and" : n.kind == NodeKind::Or ? "(or" : "(xor";
      for (const auto& k : n.kids) out += " " + smt_expr(k);
      return out + ")";
    }
    case NodeKind::BoolIte:
      return "(ite " + smt_expr(n.kids[0]) + " " + smt_expr(n.kids[1]) + " " + smt_expr(n.kids[2]) +
             ")";
    case NodeKind::Cmp: {
      const char* op = n.op == CmpOp::Lt ? "<" : n.op == CmpOp::Le ? "<=" : "=";
      return std::string("(") + op + " " + smt_aff(n.aff) + " 0)";
    }
    case NodeKind::Affine:
      return smt_aff(n.aff);
  }
  throw InternalError("unreachable expression kind");
}

}  // namespace

std::string to_smtlib(const ConstraintSet& C, const SymExpr& p) {
  std::ostringstream out;
  out << "(set-logic QF_LRA)\n";
  std::set<InstantVar> vs = vars_of(C);
  collect_vars(p, vs);
  for (const auto& v : vs)
    out << "(declare-const " << smt_name(v) << (v.sort == Sort::Bool ? " Bool" : " Real") << ")\n";
  for (const auto& c : C) out << "(assert " << smt_expr(c) << ")\n";
  out << "(assert (not " << smt_expr(p) << "))\n(check-sat)\n";
  return out.str();
}

}  // namespace lolasym

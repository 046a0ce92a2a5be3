#include "lolasym/pruning.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "lolasym/errors.hpp"
#include "lolasym/solver.hpp"

namespace lolasym {

namespace {

bool is_pure_bool(const SymExpr& e) {
  switch (e.kind()) {
    case NodeKind::BoolConst:
      return true;
    case NodeKind::BoolVar:
      return e.node().var.sort == Sort::Bool;
    case NodeKind::Cmp:
    case NodeKind::Affine:
      return false;
    case NodeKind::Not:
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor:
    case NodeKind::BoolIte:
      for (const auto& k : e.node().kids)
        if (!is_pure_bool(k)) return false;
      return true;
  }
  return false;
}

bool is_equation(const SymExpr& e) {
  return e.kind() == NodeKind::Cmp && e.node().op == CmpOp::Eq;
}

PruneResult false_result(PruneQuality q) {
  PruneResult out;
  out.quality = q;
  out.constraints.add(sym_bool(false));
  return out;
}

}  // namespace

PruneResult prune_boolean(const ConstraintSet& C, const std::vector<InstantVar>& R,
                          uint64_t& next_fresh, size_t enum_var_cap) {
  for (const auto& v : R)
    require(v.sort == Sort::Bool, "boolean pruning targets must be Boolean");
  for (const auto& e : C)
    require(is_pure_bool(e), "boolean pruning requires purely propositional constraints");

  // Variables connected through shared constraints must be enumerated jointly;
  // across unconnected groups the model set is a product, so projecting each
  // group on its own is exact — and it keeps each enumeration within the cap
  // even when many independent facts are live at once.
  std::set<InstantVar> vs = vars_of(C);
  vs.insert(R.begin(), R.end());
  std::map<InstantVar, InstantVar> up;
  for (const auto& v : vs) up.emplace(v, v);
  auto root = [&](const InstantVar& v) {
    InstantVar r = v;
    while (!(up.at(r) == r)) r = up.at(r);
    InstantVar c = v;
    while (!(up.at(c) == r)) {
      InstantVar n = up.at(c);
      up.find(c)->second = r;
      c = n;
    }
    return r;
  };
  std::vector<std::pair<SymExpr, InstantVar>> grouped;  // constraint, group root
  for (const auto& e : C) {
    std::set<InstantVar> evs;
    collect_vars(e, evs);
    if (evs.empty()) {
      if (is_false(e)) return false_result(PruneQuality::Perfect);
      continue;  // constant truth adds nothing
    }
    InstantVar r0 = root(*evs.begin());
    for (const auto& v : evs) up.find(root(v))->second = r0;
    grouped.emplace_back(e, r0);
  }

  std::map<InstantVar, std::vector<InstantVar>> comp_vars;  // ordered by root
  for (const auto& v : vs) comp_vars[root(v)].push_back(v);
  std::map<InstantVar, ConstraintSet> comp_cons;
  for (const auto& [e, rt] : grouped) comp_cons[root(rt)].add(e);

  PruneResult out;
  const uint64_t fresh_entry = next_fresh;
  for (const auto& [rt, cvars] : comp_vars) {
    std::vector<Assignment> models = enumerate_bool_models(comp_cons[rt], cvars, enum_var_cap);
    if (models.empty()) {
      next_fresh = fresh_entry;  // discard ids handed to earlier groups
      return false_result(PruneQuality::Perfect);
    }
    std::set<InstantVar> in_comp(cvars.begin(), cvars.end());
    std::vector<InstantVar> keep;
    for (const auto& r : R)
      if (in_comp.count(r)) keep.push_back(r);
    if (keep.empty()) continue;  // consistent, nothing of interest here

    std::set<std::vector<bool>> colset;
    for (const auto& mdl : models) {
      std::vector<bool> col;
      col.reserve(keep.size());
      for (const auto& r : keep) col.push_back(mdl.bools.at(r));
      colset.insert(std::move(col));
    }
    std::vector<std::vector<bool>> cols(colset.begin(), colset.end());
    const size_t c = cols.size();
    size_t k = 0;
    while ((size_t(1) << k) < c) ++k;
    // Pad with the last column so every code of the fresh variables denotes a
    // table column; otherwise spurious all-ff projections would appear.
    while (cols.size() < (size_t(1) << k)) cols.push_back(cols.back());

    std::vector<SymExpr> bits;
    for (size_t i = 0; i < k; ++i)
      bits.push_back(sym_var(InstantVar::fresh(next_fresh++, Sort::Bool)));
    out.fresh_used += k;

    auto minterm = [&](size_t code) {
      std::vector<SymExpr> lits;
      lits.reserve(k);
      for (size_t i = 0; i < k; ++i) {
        bool bit = ((code >> (k - 1 - i)) & 1) != 0;  // bits[0] most significant
        lits.push_back(bit ? bits[i] : sym_not(bits[i]));
      }
      return sym_and(std::move(lits));
    };

    ConstraintSet table;
    for (size_t i = 0; i < keep.size(); ++i) {
      std::vector<SymExpr> on;
      for (size_t j = 0; j < cols.size(); ++j)
        if (cols[j][i]) on.push_back(minterm(j));
      table.add(sym_eq(sym_var(keep[i]), sym_or(std::move(on))));
    }
    require(measure(table) <= keep.size() * (c * c + 1),
            "boolean prune exceeded its size bound");
    for (const auto& e : table) out.constraints.add(e);
  }
  return out;
}

PruneResult prune_linear(const ConstraintSet& C, const std::vector<InstantVar>& R,
                         uint64_t& next_fresh) {
  for (const auto& v : R)
    require(v.sort == Sort::Real, "linear pruning targets must be Real");

  std::vector<AffineForm> eqs;
  for (const auto& e : C) {
    if (is_false(e)) return false_result(PruneQuality::Perfect);
    require(is_equation(e), "linear pruning requires a pure equation system");
    eqs.push_back(e.node().aff);
  }

  PruneResult out;
  // Column order: relevant variables first (in R order), then the rest.
  std::vector<InstantVar> columns(R.begin(), R.end());
  std::set<InstantVar> rset(R.begin(), R.end());
  std::set<InstantVar> constrained, others;
  for (const auto& eq : eqs)
    for (const auto& [v, cf] : eq.terms) {
      (void)cf;
      constrained.insert(v);
      if (!rset.count(v)) others.insert(v);
    }
  columns.insert(columns.end(), others.begin(), others.end());
  std::map<InstantVar, size_t> colidx;
  for (size_t j = 0; j < columns.size(); ++j) colidx[columns[j]] = j;
  const size_t n = columns.size();

  std::vector<std::vector<Rational>> mtx;
  for (const auto& eq : eqs) {
    std::vector<Rational> row(n + 1, Rational(0));
    for (const auto& [v, cf] : eq.terms) row[colidx.at(v)] = cf;
    row[n] = eq.constant;
    mtx.push_back(std::move(row));
  }
  std::vector<size_t> pivots = rref(mtx, n);
  for (const auto& row : mtx) {
    bool zero = true;
    for (size_t j = 0; j < n; ++j)
      if (row[j] != 0) {
        zero = false;
        break;
      }
    if (zero && row[n] != 0) return false_result(PruneQuality::Perfect);
  }

  std::vector<bool> is_pivot(n, false);
  std::map<size_t, size_t> pivot_row;  // column -> row
  for (size_t i = 0; i < pivots.size(); ++i) {
    is_pivot[pivots[i]] = true;
    pivot_row[pivots[i]] = i;
  }
  std::vector<size_t> src;  // non-pivot (source) columns
  for (size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) src.push_back(j);

  LinearSystem sys;
  for (size_t j : src) sys.columns.push_back(columns[j]);
  for (size_t i = 0; i < R.size(); ++i) {
    LinRow lr;
    lr.lhs = R[i];
    lr.coeffs.assign(src.size(), Rational(0));
    if (is_pivot[i]) {
      // pivot row: r = -sum(non-pivot coeffs) - const
      const auto& row = mtx[pivot_row.at(i)];
      for (size_t s = 0; s < src.size(); ++s) lr.coeffs[s] = -row[src[s]];
      lr.offset = -row[n];
    } else if (constrained.count(R[i])) {
      // free but mentioned: aliases itself as a source
      auto it = std::find(src.begin(), src.end(), i);
      require(it != src.end(), "constrained non-pivot column missing from sources");
      lr.coeffs[static_cast<size_t>(it - src.begin())] = Rational(1);
    } else {
      continue;  // never mentioned: no constraint to carry
    }
    sys.rows.push_back(std::move(lr));
  }
  if (sys.rows.empty()) return out;

  std::optional<GaussSolved> solved = gaussian_solve(sys);
  require(solved.has_value(), "projection system inconsistent after consistent reduction");

  std::vector<InstantVar> fresh;
  for (size_t kk = 0; kk < solved->rank; ++kk)
    fresh.push_back(InstantVar::fresh(next_fresh++, Sort::Real));
  out.fresh_used = solved->rank;

  for (size_t i = 0; i < sys.rows.size(); ++i) {
    AffineForm aff;
    aff.constant = sys.rows[i].offset;
    for (size_t kk = 0; kk < solved->rank; ++kk) {
      const Rational& cf = solved->basis[i][kk];
      if (cf != 0) aff.terms.emplace_back(fresh[kk], cf);
    }
    out.constraints.add(sym_eq(sym_var(*sys.rows[i].lhs), sym_affine(std::move(aff))));
  }
  require(measure(out.constraints) <= sys.rows.size() * (2 * solved->rank + 2),
          "linear prune exceeded its size bound");
  return out;
}

PruneResult prune_mixed(const ConstraintSet& C, const std::vector<InstantVar>& R,
                        uint64_t& next_fresh, size_t enum_var_cap) {
  PruneResult out;
  out.quality = PruneQuality::Sound;
  if (C.contains_false()) return false_result(PruneQuality::Sound);

  std::vector<InstantVar> RB, RR;
  for (const auto& v : R) (v.sort == Sort::Bool ? RB : RR).push_back(v);

  // Boolean projection: comparison atoms become opaque selector variables.
  // Correlations through arithmetic are dropped here — the sound weakening.
  uint64_t sel_next = 0;
  for (const auto& v : vars_of(C))
    if (v.kind == InstantVar::Kind::Fresh) sel_next = std::max(sel_next, v.fresh_id + 1);
  std::map<SymExpr, InstantVar> selectors;
  std::function<SymExpr(const SymExpr&)> abstract = [&](const SymExpr& e) -> SymExpr {
    const Node& nd = e.node();
    switch (nd.kind) {
      case NodeKind::BoolConst:
      case NodeKind::BoolVar:
        return e;
      case NodeKind::Cmp: {
        auto it = selectors.find(e);
        if (it == selectors.end())
          it = selectors.emplace(e, InstantVar::fresh(sel_next++, Sort::Bool)).first;
        return sym_var(it->second);
      }
      case NodeKind::Not:
        return sym_not(abstract(nd.kids[0]));
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Xor: {
        std::vector<SymExpr> kids;
        for (const auto& k : nd.kids) kids.push_back(abstract(k));
        if (nd.kind == NodeKind::And) return sym_and(std::move(kids));
        if (nd.kind == NodeKind::Or) return sym_or(std::move(kids));
        return sym_xor(std::move(kids));
      }
      case NodeKind::BoolIte:
        return sym_ite(abstract(nd.kids[0]), abstract(nd.kids[1]), abstract(nd.kids[2]));
      case NodeKind::Affine:
        break;
    }
    throw InternalError("Real expression at constraint position");
  };
  ConstraintSet CB;
  for (const auto& e : C) CB.add(abstract(e));
  PruneResult pb = prune_boolean(CB, RB, next_fresh, enum_var_cap);
  if (pb.constraints.contains_false()) return false_result(PruneQuality::Sound);
  for (const auto& e : pb.constraints) out.constraints.add(e);
  out.fresh_used += pb.fresh_used;

  // Linear projection of the equation subset.
  ConstraintSet CLE;
  for (const auto& e : C)
    if (is_equation(e)) CLE.add(e);
  uint64_t real_base = next_fresh;
  PruneResult pl = prune_linear(CLE, RR, next_fresh);
  if (pl.constraints.contains_false()) return false_result(PruneQuality::Sound);
  for (const auto& e : pl.constraints) out.constraints.add(e);
  out.fresh_used += pl.fresh_used;

  // Interval bounds, derived from everything we know. Unbounded sides are
  // omitted; an empty interval means C itself was unsatisfiable.
  bool contradiction = false;
  auto add_box = [&](const ConstraintSet& query, InstantVar v) {
    Bounds b = bounds_of(query, v);
    if (b.empty) {
      contradiction = true;
      return;
    }
    if (b.lo)
      out.constraints.add(sym_cmp(b.lo_attained ? CmpOp::Le : CmpOp::Lt,
                                  aff_sub(AffineForm::of_const(*b.lo), AffineForm::of_var(v))));
    if (b.hi)
      out.constraints.add(sym_cmp(b.hi_attained ? CmpOp::Le : CmpOp::Lt,
                                  aff_sub(AffineForm::of_var(v), AffineForm::of_const(*b.hi))));
  };

  // Fresh Reals introduced by the equation rows: the rows are definitional
  // extensions, so querying C joined with them is equisatisfiable with C.
  if (pl.fresh_used > 0) {
    ConstraintSet query = C;
    for (const auto& e : pl.constraints) query.add(e);
    for (uint64_t id = real_base; id < real_base + pl.fresh_used; ++id)
      add_box(query, InstantVar::fresh(id, Sort::Real));
  }

  // Non-equation facts supported entirely by relevant variables ride along
  // unchanged: range readings and per-instant range assumptions land here,
  // and the rows plus per-fresh boxes cannot express the joint constraints
  // they induce across fresh directions.
  std::set<InstantVar> keep(R.begin(), R.end());
  for (const auto& e : C) {
    if (is_pure_bool(e) || is_equation(e)) continue;
    std::set<InstantVar> vs;
    collect_vars(e, vs);
    bool supported = true;
    for (const auto& v : vs)
      if (!keep.count(v)) {
        supported = false;
        break;
      }
    if (supported) out.constraints.add(e);
  }

  // Relevant Reals the equation subset never mentioned get no row above, yet
  // C may still box them in through mixed chains; keep the derived boxes.
  std::set<InstantVar> rowed = vars_of(pl.constraints);
  for (const auto& v : RR)
    if (!rowed.count(v)) add_box(C, v);

  if (contradiction) return false_result(PruneQuality::Sound);
  return out;
}

PruneResult prune(const ConstraintSet& C, const std::vector<InstantVar>& R, uint64_t& next_fresh,
                  size_t enum_var_cap) {
  if (C.contains_false()) return false_result(PruneQuality::Perfect);
  bool all_bool = true, all_eq = true;
  for (const auto& e : C) {
    if (!is_pure_bool(e)) all_bool = false;
    if (!is_equation(e)) all_eq = false;
  }
  bool r_bool = true, r_real = true;
  for (const auto& v : R) {
    if (v.sort != Sort::Bool) r_bool = false;
    if (v.sort != Sort::Real) r_real = false;
  }
  if (all_bool && r_bool) return prune_boolean(C, R, next_fresh, enum_var_cap);
  if (all_eq && r_real) return prune_linear(C, R, next_fresh);
  return prune_mixed(C, R, next_fresh, enum_var_cap);
}

}  // namespace lolasym

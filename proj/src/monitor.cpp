#include "lolasym/monitor.hpp"

#include <algorithm>
#include <set>

#include "lolasym/errors.hpp"

namespace lolasym {

namespace {

void collect_offset_streams(const StreamExpr& e, std::set<uint32_t>& out) {
  const SNode& n = e.node();
  if (n.kind == SNode::Kind::Offset) out.insert(n.stream);
  for (const auto& k : n.args) collect_offset_streams(k, out);
}

void check_flat(const StreamExpr& e, const std::string& where) {
  const SNode& n = e.node();
  if (n.kind == SNode::Kind::Offset && (n.offset < -1 || n.offset > 0))
    throw SpecError("the monitor requires a flattened specification (offset " +
                    std::to_string(n.offset) + " in " + where + ")");
  for (const auto& k : n.args) check_flat(k, where);
}

std::optional<Value> const_value_of(const SymExpr& e) {
  if (e.kind() == NodeKind::BoolConst) return Value::of_bool(e.node().bval);
  if (e.kind() == NodeKind::Affine && e.node().aff.is_constant())
    return Value::of_rat(e.node().aff.constant);
  return std::nullopt;
}

}  // namespace

std::string verdict_line(const Specification& spec, const Verdict& v) {
  std::string name = spec.streams.at(v.stream).name;
  std::string kind, payload;
  auto val_payload = [](const Value& c) {
    return c.sort == Sort::Bool ? std::string(c.b ? "tt" : "ff") : rat_to_string(c.r);
  };
  switch (v.kind) {
    case VerdictKind::Concrete:
      kind = "val";
      payload = val_payload(*v.concrete);
      break;
    case VerdictKind::BoolTri:
      kind = "tri";
      payload = v.tri ? (*v.tri ? "tt" : "ff") : "?";
      break;
    case VerdictKind::RealBounds:
      kind = "bounds";
      payload = "[" + rat_to_string(*v.lo) + "," + rat_to_string(*v.hi) + "]";
      break;
    case VerdictKind::Residual:
      kind = "residual";
      payload = v.residual;
      break;
    case VerdictKind::Revised:
      kind = "revised";
      if (v.concrete)
        payload = val_payload(*v.concrete);
      else if (v.tri)
        payload = *v.tri ? "tt" : "ff";
      else
        payload = "[" + rat_to_string(*v.lo) + "," + rat_to_string(*v.hi) + "]";
      break;
  }
  return std::to_string(v.t) + "\t" + name + "\t" + kind + "\t" + payload;
}

Monitor::Monitor(const Specification& spec, MonitorConfig config) : spec_(spec), cfg_(config) {
  for (const auto& d : spec.streams)
    if (d.def) check_flat(*d.def, "definition of '" + d.name + "'");
  for (const auto& a : spec.assumptions) check_flat(a, "an assumption");

  int64_t needed = spec.assumption_lookback();
  lookback_ = cfg_.lookback >= 0 ? cfg_.lookback : needed;
  if (lookback_ < needed)
    throw SpecError("lookback " + std::to_string(lookback_) +
                    " is smaller than the assumptions' deepest past reference (" +
                    std::to_string(needed) + ")");

  std::set<uint32_t> assumed;
  for (const auto& a : spec.assumptions) collect_offset_streams(a, assumed);
  assumed_streams_.assign(assumed.begin(), assumed.end());
}

void Monitor::add_constraint(const SymExpr& e) {
  if (bindings_.empty()) {
    live_.add(e);
    return;
  }
  std::map<InstantVar, SymExpr> subst;
  std::set<InstantVar> vs;
  collect_vars(e, vs);
  for (const auto& v : vs) {
    auto it = bindings_.find(v);
    if (it == bindings_.end()) continue;
    subst.emplace(v, it->second.sort == Sort::Bool ? sym_bool(it->second.b)
                                                   : sym_rat(it->second.r));
  }
  live_.add(subst.empty() ? e : substitute(e, subst));
}

void Monitor::propagate() {
  for (;;) {
    std::map<InstantVar, SymExpr> found;
    for (const auto& e : live_) {
      if (e.kind() == NodeKind::BoolVar) {
        found.emplace(e.node().var, sym_bool(true));
      } else if (e.kind() == NodeKind::Not && e.node().kids[0].kind() == NodeKind::BoolVar) {
        found.emplace(e.node().kids[0].node().var, sym_bool(false));
      } else if (e.kind() == NodeKind::Cmp && e.node().op == CmpOp::Eq &&
                 e.node().aff.terms.size() == 1) {
        const auto& [v, c] = e.node().aff.terms[0];
        found.emplace(v, sym_rat(-e.node().aff.constant / c));
      }
    }
    if (found.empty()) break;
    for (const auto& [v, ex] : found) {
      auto cv = const_value_of(ex);
      bindings_[v] = *cv;
    }
    ConstraintSet next;
    for (const auto& e : live_) next.add(substitute(e, found));
    live_ = std::move(next);
  }
  if (live_.contains_false()) {
    ConstraintSet ff;
    ff.add(sym_bool(false));
    live_ = std::move(ff);
  }
}

std::vector<InstantVar> Monitor::frontier() const {
  std::set<InstantVar> out;
  for (uint32_t s = 0; s < spec_.streams.size(); ++s)
    out.insert(InstantVar::at(s, t_, spec_.streams[s].sort));
  for (uint32_t s : assumed_streams_)
    for (int64_t v = std::max<int64_t>(0, t_ - lookback_); v < t_; ++v)
      out.insert(InstantVar::at(s, v, spec_.streams[s].sort));
  return {out.begin(), out.end()};
}

Verdict Monitor::emit_for(uint32_t stream, const SymExpr& rhs_now) {
  const StreamDecl& decl = spec_.streams[stream];
  InstantVar yv = InstantVar::at(stream, t_, decl.sort);
  Verdict v;
  v.t = t_;
  v.stream = stream;

  auto bound = bindings_.find(yv);
  if (decl.sort == Sort::Bool) {
    v.kind = VerdictKind::BoolTri;
    if (bound != bindings_.end()) {
      v.tri = bound->second.b;
      return v;
    }
    Entail e = check_predicate(live_, sym_var(yv), cfg_.node_budget);
    if (e == Entail::Valid) {
      v.tri = true;
      add_constraint(sym_var(yv));
    } else if (e == Entail::Unsat) {
      v.tri = false;
      add_constraint(sym_not(sym_var(yv)));
    } else {
      pending_.push_back({t_, stream, VerdictKind::BoolTri});
    }
    return v;
  }

  if (bound != bindings_.end()) {
    v.kind = VerdictKind::Concrete;
    v.concrete = bound->second;
    return v;
  }
  Bounds b = bounds_of(live_, yv);
  if (!b.empty && b.lo && b.hi && *b.lo == *b.hi && b.lo_attained && b.hi_attained) {
    v.kind = VerdictKind::Concrete;
    v.concrete = Value::of_rat(*b.lo);
    add_constraint(sym_eq(sym_var(yv), sym_rat(*b.lo)));
    return v;
  }
  if (!b.empty && b.lo && b.hi) {
    v.kind = VerdictKind::RealBounds;
    v.lo = b.lo;
    v.hi = b.hi;
    pending_.push_back({t_, stream, VerdictKind::RealBounds});
    return v;
  }
  v.kind = VerdictKind::Residual;
  std::map<InstantVar, SymExpr> subst;
  std::set<InstantVar> vs;
  collect_vars(rhs_now, vs);
  for (const auto& var : vs) {
    auto it = bindings_.find(var);
    if (it != bindings_.end())
      subst.emplace(var, it->second.sort == Sort::Bool ? sym_bool(it->second.b)
                                                       : sym_rat(it->second.r));
  }
  v.residual = to_string(subst.empty() ? rhs_now : substitute(rhs_now, subst), spec_namer(spec_));
  pending_.push_back({t_, stream, VerdictKind::Residual});
  return v;
}

std::vector<Verdict> Monitor::step(const std::map<uint32_t, Reading>& readings) {
  return step(readings, cfg_.pruning);
}

std::vector<Verdict> Monitor::step(const std::map<uint32_t, Reading>& readings, bool prune_now) {
  require(!finalized_, "monitor already finalized");

  std::vector<std::pair<uint32_t, SymExpr>> emitted_rhs;
  for (uint32_t s = 0; s < spec_.streams.size(); ++s) {
    const StreamDecl& d = spec_.streams[s];
    if (!d.def) continue;
    SymExpr rhs = to_symexpr(spec_, *d.def, t_);
    add_constraint(sym_eq(sym_var(InstantVar::at(s, t_, d.sort)), rhs));
    if (!d.synthetic) emitted_rhs.emplace_back(s, rhs);
  }
  for (const auto& a : spec_.assumptions) add_constraint(to_symexpr(spec_, a, t_));
  for (const auto& [idx, r] : readings) {
    if (idx >= spec_.streams.size())
      throw SpecError("reading for unknown stream index " + std::to_string(idx));
    if (spec_.streams[idx].kind != StreamKind::Input)
      throw SpecError("reading for non-input stream '" + spec_.streams[idx].name + "'");
    for (const auto& c : encode_reading(spec_, idx, t_, r)) add_constraint(c);
  }
  propagate();

  std::vector<Verdict> out;
  for (const auto& [s, rhs] : emitted_rhs) out.push_back(emit_for(s, rhs));
  propagate();  // asserted-back verdicts may ground more facts

  if (prune_now) {
    std::vector<InstantVar> front = frontier();
    std::vector<InstantVar> targets;
    for (const auto& v : front)
      if (!bindings_.count(v)) targets.push_back(v);
    try {
      PruneResult pr = prune(live_, targets, fresh_, cfg_.enum_var_cap);
      live_ = std::move(pr.constraints);
      std::set<InstantVar> keep(front.begin(), front.end());
      for (auto it = bindings_.begin(); it != bindings_.end();)
        it = keep.count(it->first) ? std::next(it) : bindings_.erase(it);
    } catch (const ResourceError&) {
      // An instant too entangled to project within budget keeps its full
      // knowledge: skipping a prune is always sound, and a later, cheaper
      // step may shrink the set again.
    }
  }
  measures_.push_back(measure(live_));
  ++t_;
  return out;
}

std::vector<Verdict> Monitor::finalize() {
  require(!finalized_, "monitor already finalized");
  finalized_ = true;
  std::vector<Verdict> out;
  for (const auto& p : pending_) {
    const StreamDecl& decl = spec_.streams[p.stream];
    InstantVar yv = InstantVar::at(p.stream, p.t, decl.sort);
    Verdict v;
    v.t = p.t;
    v.stream = p.stream;
    v.kind = VerdictKind::Revised;
    auto bound = bindings_.find(yv);
    if (decl.sort == Sort::Bool) {
      if (bound != bindings_.end()) {
        v.tri = bound->second.b;
        out.push_back(v);
        continue;
      }
      Entail e = check_predicate(live_, sym_var(yv), cfg_.node_budget);
      if (e == Entail::Valid)
        v.tri = true;
      else if (e == Entail::Unsat)
        v.tri = false;
      else
        continue;
      out.push_back(v);
      continue;
    }
    if (bound != bindings_.end()) {
      v.concrete = bound->second;
      out.push_back(v);
      continue;
    }
    Bounds b = bounds_of(live_, yv);
    if (!b.empty && b.lo && b.hi && *b.lo == *b.hi && b.lo_attained && b.hi_attained) {
      v.concrete = Value::of_rat(*b.lo);
      out.push_back(v);
    } else if (p.kind == VerdictKind::Residual && !b.empty && b.lo && b.hi) {
      v.lo = b.lo;
      v.hi = b.hi;
      out.push_back(v);
    }
  }
  return out;
}

size_t Monitor::max_measure() const {
  size_t mx = 0;
  for (size_t m : measures_) mx = std::max(mx, m);
  return mx;
}

RunResult run(const Specification& spec, const std::vector<std::map<uint32_t, Reading>>& readings,
              const MonitorConfig& config) {
  Monitor m(spec, config);
  RunResult rr;
  const size_t T = readings.size();
  for (size_t t = 0; t < T; ++t) {
    bool prune_now = config.pruning && t + 1 < T;
    std::vector<Verdict> vs = m.step(readings[t], prune_now);
    rr.verdicts.insert(rr.verdicts.end(), vs.begin(), vs.end());
  }
  std::vector<Verdict> rev = m.finalize();
  rr.verdicts.insert(rr.verdicts.end(), rev.begin(), rev.end());
  rr.measures = m.measure_series();
  rr.max_measure = m.max_measure();
  return rr;
}

}  // namespace lolasym

// Release gate: every shipping requirement checked end to end, one PASS/FAIL
// line each, nonzero exit on any failure.  Budgets and expected values are
// pinned here on purpose — a change that moves them is a behavior change.
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lolasym/errors.hpp"
#include "lolasym/interval.hpp"
#include "lolasym/monitor.hpp"
#include "lolasym/pruning.hpp"
#include "lolasym/rng.hpp"
#include "lolasym/semantics.hpp"
#include "lolasym/solver.hpp"
#include "lolasym/spec_ast.hpp"
#include "lolasym/symexpr.hpp"
#include "lolasym/trace.hpp"
#include "oracles.hpp"

using namespace lolasym;

namespace {

// --- harness -----------------------------------------------------------------

struct Gate {
  int failed = 0;

  void criterion(int id, const std::string& what, double budget_s,
                 const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (detail.empty() && budget_s > 0 && secs > budget_s) detail = "time budget exceeded";
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (detail.empty() ? "PASS" : "FAIL") << "  " << id << ". " << what << "  [" << secs
         << " s";
    if (budget_s > 0) line << " / " << budget_s << " s";
    line << "]";
    if (!detail.empty()) {
      line << " -- " << detail;
      ++failed;
    }
    std::cout << line.str() << std::endl;
  }
};

std::string note(const std::string& s) { return s; }

// --- shared monitor plumbing ---------------------------------------------------

Specification prep(const std::string& text) {
  Specification spec = flatten(parse_spec(text));
  if (classify_fragment(spec) == Fragment::B_LA_ite) spec = rewrite_ite(spec);
  return spec;
}

std::map<uint32_t, Reading> row(const Specification& spec,
                                const std::map<std::string, Reading>& named) {
  std::map<uint32_t, Reading> out;
  for (const auto& [name, r] : named) out[*spec.index_of(name)] = r;
  return out;
}

Reading ex(long v) { return Reading::exact_of(Value::of_rat(Rational(v))); }
Reading exb(bool v) { return Reading::exact_of(Value::of_bool(v)); }
Reading rg(long lo, long hi) { return Reading::range(Rational(lo), Rational(hi)); }

using Key = std::pair<int64_t, uint32_t>;

// Determined verdicts of a run: Concrete values, decided tri verdicts, and
// degenerate bounds; revised records overwrite their originals.
std::map<Key, std::string> determined(const RunResult& r) {
  std::map<Key, std::string> out;
  for (const auto& v : r.verdicts) {
    std::string val;
    switch (v.kind) {
      case VerdictKind::Concrete:
        val = to_string(*v.concrete);
        break;
      case VerdictKind::BoolTri:
        if (v.tri) val = *v.tri ? "tt" : "ff";
        break;
      case VerdictKind::RealBounds:
        if (v.lo && v.hi && *v.lo == *v.hi) val = rat_to_string(*v.lo);
        break;
      case VerdictKind::Revised:
        if (v.concrete)
          val = to_string(*v.concrete);
        else if (v.tri)
          val = *v.tri ? "tt" : "ff";
        else if (v.lo && v.hi && *v.lo == *v.hi)
          val = rat_to_string(*v.lo);
        break;
      case VerdictKind::Residual:
        break;
    }
    if (!val.empty()) out[{v.t, v.stream}] = val;
  }
  return out;
}

const char* kWindowSpec =
    "input ld : Real\n"
    "output acc := acc[-1|0] + ld[now] - ld[-3|0]\n"
    "output ok := acc[now] <= 15\n";

const char* kShareSpec =
    "input ld : Real\n"
    "input usr_a : Bool\n"
    "output acc := acc[-1|0] + ld[now]\n"
    "output acc_a := acc_a[-1|0] + ite(usr_a[now], ld[now], 0)\n"
    "output ok := acc_a[now] <= 1/2 * acc[now]\n"
    "assumption 0 <= ld[now] && ld[now] <= 10\n";

const char* kXorSpec =
    "input a : Bool\n"
    "output x := x[-1|ff] ^ a[now]\n";

const char* kAccumSpec =
    "input ld : Real\n"
    "output acc := acc[-1|0] + ld[now]\n";

const char* kPeakSpec =
    "input sig : Real\n"
    "output avg := avg[-1|0] + 1/10 * sig[now] - 1/10 * sig[-10|0]\n"
    "output peak := 5 < avg[now]\n";

// --- criterion 1: golden sliding-window run ------------------------------------

std::string c1_golden() {
  Specification spec = prep(kWindowSpec);
  uint32_t acc = *spec.index_of("acc"), ok = *spec.index_of("ok");

  // Fully exact feed: values and violation verdicts are pinned.
  {
    std::vector<std::map<uint32_t, Reading>> rows;
    for (long v : {3, 4, 5, 7}) rows.push_back(row(spec, {{"ld", ex(v)}}));
    RunResult r = run(spec, rows, MonitorConfig{});
    long accs[] = {3, 7, 12, 16};
    bool oks[] = {true, true, true, false};
    std::map<Key, const Verdict*> by_key;
    for (const auto& v : r.verdicts) by_key[{v.t, v.stream}] = &v;
    for (int t = 0; t < 4; ++t) {
      const Verdict* a = by_key.at({t, acc});
      if (a->kind != VerdictKind::Concrete || *a->concrete != Value::of_rat(Rational(accs[t])))
        return note("exact run: acc^" + std::to_string(t) + " is not " + std::to_string(accs[t]));
      const Verdict* k = by_key.at({t, ok});
      if (k->kind != VerdictKind::BoolTri || !k->tri || *k->tri != oks[t])
        return note("exact run: ok^" + std::to_string(t) + " wrong");
    }
  }

  // Range reading at t=0: the symbolic engine still decides every ok verdict
  // and recovers acc^3 = 16 exactly; the interval engine is stuck at [12,20].
  std::vector<std::map<uint32_t, Reading>> rows = {
      row(spec, {{"ld", rg(1, 5)}}),
      row(spec, {{"ld", ex(4)}}),
      row(spec, {{"ld", ex(5)}}),
      row(spec, {{"ld", ex(7)}}),
  };
  {
    RunResult r = run(spec, rows, MonitorConfig{});
    std::map<Key, const Verdict*> by_key;
    for (const auto& v : r.verdicts) by_key[{v.t, v.stream}] = &v;
    bool oks[] = {true, true, true, false};
    for (int t = 0; t < 4; ++t) {
      const Verdict* k = by_key.at({t, ok});
      if (k->kind != VerdictKind::BoolTri || !k->tri || *k->tri != oks[t])
        return note("uncertain run: ok^" + std::to_string(t) + " undecided or wrong");
    }
    const Verdict* a3 = by_key.at({3, acc});
    if (a3->kind != VerdictKind::Concrete || *a3->concrete != Value::of_rat(Rational(16)))
      return "uncertain run: acc^3 is not the concrete 16";
  }
  {
    IntervalMonitor im(spec);
    std::map<uint32_t, AbsVal> at3;
    for (size_t t = 0; t < rows.size(); ++t)
      for (const auto& [s, av] : im.step(rows[t]))
        if (t == 3) at3[s] = av;
    if (abs_payload(at3.at(acc)) != "[12,20]")
      return "interval run: acc^3 is " + abs_payload(at3.at(acc)) + ", want [12,20]";
    if (abs_payload(at3.at(ok)) != "?") return "interval run: ok^3 unexpectedly decided";
  }
  return "";
}

// --- criterion 2: user-share run with a range assumption ------------------------

std::string c2_share() {
  Specification spec = prep(kShareSpec);
  uint32_t ok = *spec.index_of("ok"), acc_a = *spec.index_of("acc_a");
  std::vector<std::optional<long>> lds = {std::nullopt, 10, 4,  std::nullopt,
                                          std::nullopt, 1,  9};
  std::vector<bool> usr = {false, false, false, true, true, true, false};
  std::vector<std::map<uint32_t, Reading>> rows;
  for (size_t t = 0; t < lds.size(); ++t) {
    std::map<std::string, Reading> named = {{"usr_a", exb(usr[t])}};
    if (lds[t]) named["ld"] = ex(*lds[t]);
    rows.push_back(row(spec, named));
  }
  RunResult r = run(spec, rows, MonitorConfig{});

  std::map<Key, const Verdict*> by_key;
  for (const auto& v : r.verdicts) by_key[{v.t, v.stream}] = &v;  // revised wins
  const Verdict* k = by_key.at({6, ok});
  bool ok_decided = (k->kind == VerdictKind::BoolTri || k->kind == VerdictKind::Revised) &&
                    k->tri && *k->tri;
  if (!ok_decided) return "ok^6 is not determined tt";
  const Verdict* a = by_key.at({6, acc_a});
  if (a->kind != VerdictKind::RealBounds || !a->lo || !a->hi || *a->lo != Rational(1) ||
      *a->hi != Rational(21))
    return "acc_a^6 bound is not exactly [1,21]";
  return "";
}

// --- criteria 3/4: pruning perfectness against the never-pruning reference ------

std::string perfectness_battery(bool boolean) {
  SplitMix64 rng(boolean ? 9001 : 9002);
  const size_t max_streams = boolean ? 4 : 3;
  for (int round = 0; round < 200; ++round) {
    Specification spec;
    do {
      spec = boolean ? oracle::gen_bool_spec(rng) : oracle::gen_la_spec(rng);
    } while (spec.streams.size() > max_streams);
    spec = flatten(spec);
    auto rows = oracle::gen_readings(spec, rng, 15, 2, 3, false);

    MonitorConfig pruned_cfg, ref_cfg;
    ref_cfg.pruning = false;
    RunResult pruned = run(spec, rows, pruned_cfg);
    RunResult ref = run(spec, rows, ref_cfg);
    if (determined(pruned) != determined(ref))
      return "round " + std::to_string(round) + ": determined verdicts diverge from reference";

    const size_t m = spec.streams.size();
    if (boolean) {
      const size_t bound = m * ((size_t{1} << (2 * m)) + 1);
      for (size_t i = 0; i < pruned.measures.size(); ++i)
        if (pruned.measures[i] > bound)
          return "round " + std::to_string(round) + ": measure " +
                 std::to_string(pruned.measures[i]) + " > " + std::to_string(bound) +
                 " at step " + std::to_string(i);
    } else {
      const size_t bound = 2 * m * m + 2 * m;
      // the final step is deliberately left unpruned for finalize()
      for (size_t i = 0; i + 1 < pruned.measures.size(); ++i)
        if (pruned.measures[i] > bound)
          return "round " + std::to_string(round) + ": post-prune measure " +
                 std::to_string(pruned.measures[i]) + " > " + std::to_string(bound) +
                 " at step " + std::to_string(i);
    }
  }
  return "";
}

// --- criterion 5: mixed soundness and the polygon strictness witness ------------

// Boolean chain, affine chain, and a verdict coupling them through a comparison.
Specification gen_mixed_spec(SplitMix64& rng) {
  Specification sp;
  sp.streams.push_back({"xb", Sort::Bool, StreamKind::Input, std::nullopt, false});
  sp.streams.push_back({"xr", Sort::Real, StreamKind::Input, std::nullopt, false});

  StreamExpr leaf = se_offset(0, 0, std::nullopt);
  if (rng.chance(1, 3)) leaf = se_fun(Op::Not, {leaf});
  StreamExpr rec = se_offset(2, -1, Value::of_bool(rng.chance(1, 2)));
  Op bop = rng.chance(1, 2) ? Op::Xor : (rng.chance(1, 2) ? Op::Or : Op::And);
  sp.streams.push_back({"p", Sort::Bool, StreamKind::Output, se_fun(bop, {leaf, rec}), false});

  auto coeff = [&]() {
    Rational c(static_cast<long>(rng.below(5)) - 2);
    return c == 0 ? Rational(1) : c;
  };
  StreamExpr aff = se_rat(Rational(static_cast<long>(rng.below(7)) - 3));
  aff = se_fun(Op::Add, {aff, se_fun(Op::Mul, {se_rat(coeff()), se_offset(1, 0, std::nullopt)})});
  aff = se_fun(Op::Add,
               {aff, se_fun(Op::Mul, {se_rat(coeff()),
                                      se_offset(3, -1, Value::of_rat(Rational(
                                                           static_cast<long>(rng.below(5)))))})});
  sp.streams.push_back({"s", Sort::Real, StreamKind::Output, aff, false});

  StreamExpr cmp = se_fun(Op::Le, {se_offset(3, 0, std::nullopt),
                                   se_rat(Rational(static_cast<long>(rng.below(13)) - 6))});
  Op join = rng.chance(1, 2) ? Op::And : (rng.chance(1, 2) ? Op::Or : Op::Xor);
  sp.streams.push_back(
      {"ok", Sort::Bool, StreamKind::Output, se_fun(join, {se_offset(2, 0, std::nullopt), cmp}),
       false});
  return sp;
}

std::string c5_mixed() {
  SplitMix64 rng(9005);
  for (int round = 0; round < 200; ++round) {
    Specification spec = flatten(gen_mixed_spec(rng));
    if (classify_fragment(spec) != Fragment::B_LA) return "generator left the mixed fragment";
    auto rows = oracle::gen_readings(spec, rng, 12, 1, 3, true);

    MonitorConfig ref_cfg;
    ref_cfg.pruning = false;
    auto pruned = determined(run(spec, rows, MonitorConfig{}));
    auto ref = determined(run(spec, rows, ref_cfg));
    for (const auto& [k, v] : pruned) {
      auto it = ref.find(k);
      if (it != ref.end() && it->second != v)
        return "round " + std::to_string(round) + ": determined verdict contradicts reference (t=" +
               std::to_string(k.first) + ", stream " + spec.streams[k.second].name + ": " + v +
               " vs " + it->second + ")";
    }
  }

  // Fig-2-style witness: x = i0+i1+i2, y = 4*i0+2*i1+i2 over the unit cube.
  // The pruned box keeps corner (3,0) even though the true projection forces
  // x=3 -> all i=1 -> y=7; the discarded corner witnesses strict containment.
  InstantVar i0 = InstantVar::at(0, 0, Sort::Real), i1 = InstantVar::at(1, 0, Sort::Real),
             i2 = InstantVar::at(2, 0, Sort::Real), x = InstantVar::at(10, 0, Sort::Real),
             y = InstantVar::at(11, 0, Sort::Real);
  ConstraintSet C;
  C.add(sym_eq(sym_var(x), sym_add(sym_add(sym_var(i0), sym_var(i1)), sym_var(i2))));
  C.add(sym_eq(sym_var(y), sym_add(sym_add(sym_scale(Rational(4), sym_var(i0)),
                                           sym_scale(Rational(2), sym_var(i1))),
                                   sym_var(i2))));
  for (auto v : {i0, i1, i2}) {
    C.add(sym_le(sym_rat(Rational(0)), sym_var(v)));
    C.add(sym_le(sym_var(v), sym_rat(Rational(1))));
  }
  uint64_t fresh = 0;
  PruneResult pr = prune_mixed(C, {x, y}, fresh);

  ConstraintSet probe = pr.constraints;
  probe.add(sym_eq(sym_var(x), sym_rat(Rational(3))));
  probe.add(sym_eq(sym_var(y), sym_rat(Rational(0))));
  if (!is_satisfiable(probe)) return "pruned projection rejects the (3,0) corner";

  // Independent check over the 3-variable source system: fixing x = 3 pins the
  // polytope to the single vertex (1,1,1), whose y-value is 7, never 0.
  std::vector<oracle::LinAtom> atoms;
  for (size_t i = 0; i < 3; ++i) {
    std::vector<Rational> lo(3), hi(3);
    lo[i] = -1;
    hi[i] = 1;
    atoms.push_back({lo, Rational(0), false});   // -i_k <= 0
    atoms.push_back({hi, Rational(-1), false});  // i_k - 1 <= 0
  }
  atoms.push_back({{Rational(1), Rational(1), Rational(1)}, Rational(-3), true});  // x = 3
  auto vs = oracle::vertices(atoms, 3);
  if (vs.empty()) return "oracle found no vertex with x = 3";
  for (const auto& v : vs)
    if (4 * v[0] + 2 * v[1] + v[2] != 7) return "oracle vertex with x = 3 has unexpected y";

  ConstraintSet orig = C;
  orig.add(sym_eq(sym_var(x), sym_rat(Rational(3))));
  orig.add(sym_eq(sym_var(y), sym_rat(Rational(0))));
  if (is_satisfiable(orig)) return "original system unexpectedly admits (3,0)";
  return "";
}

// --- criterion 6: max measure is independent of trace length --------------------

std::string c6_lengths() {
  for (const char* text : {kXorSpec, kAccumSpec}) {
    Specification spec = prep(text);
    size_t maxes[2];
    size_t lens[2] = {100, 10000};
    for (int i = 0; i < 2; ++i) {
      std::vector<std::map<uint32_t, Reading>> rows(lens[i]);  // 100% unknown
      maxes[i] = run(spec, rows, MonitorConfig{}).max_measure;
    }
    if (maxes[0] != maxes[1])
      return std::string("max measure drifts with length (") + spec.streams[0].name +
             " spec: " + std::to_string(maxes[0]) + " at 100 vs " + std::to_string(maxes[1]) +
             " at 10000)";
  }
  return "";
}

// --- criterion 7: burst recovery on the peak detector ---------------------------

std::string c7_bursts() {
  Specification spec = prep(kPeakSpec);
  uint32_t peak = *spec.index_of("peak");
  const size_t len = 140;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    TraceFile base = gen_spike({"sig"}, len, 500 + seed);
    TraceFile bursted = inject_bursts(base, {3, 5, 20, 900 + seed});
    std::set<size_t> unknown_rows;
    for (size_t r = 0; r < len; ++r)
      if (bursted.rows[r][0].kind == Reading::Kind::Unknown) unknown_rows.insert(r);
    if (unknown_rows.empty()) return "seed " + std::to_string(seed) + ": no burst landed";
    const size_t first = *unknown_rows.begin();
    auto rows = readings_for(spec, bursted);

    // Interval side: the recursive average never sheds the unknown it absorbed.
    IntervalMonitor im(spec);
    for (size_t t = 0; t < len; ++t)
      for (const auto& [s, av] : im.step(rows[t])) {
        if (s != peak) continue;
        bool det = av.determined();
        if (t < first && !det)
          return "seed " + std::to_string(seed) + ": interval lost peak^" + std::to_string(t) +
                 " before any burst";
        if (t >= first && det)
          return "seed " + std::to_string(seed) + ": interval decided peak^" + std::to_string(t) +
                 " after the first burst";
      }

    // Symbolic side: every instant whose ten-sample window has no unknown row
    // gets a determined peak verdict again.
    auto det = determined(run(spec, rows, MonitorConfig{}));
    bool recovered_after_first = false;
    for (size_t t = 0; t < len; ++t) {
      bool clear = true;
      for (size_t k = (t >= 9 ? t - 9 : 0); k <= t; ++k)
        if (unknown_rows.count(k)) clear = false;
      if (!clear) continue;
      if (!det.count({static_cast<int64_t>(t), peak}))
        return "seed " + std::to_string(seed) + ": symbolic peak^" + std::to_string(t) +
               " undetermined despite a clear window";
      if (t > first) recovered_after_first = true;
    }
    if (!recovered_after_first)
      return "seed " + std::to_string(seed) + ": no clear window after the first burst";
  }
  return "";
}

// --- criterion 8: the step-bound assumption recovers verdicts --------------------

std::string c8_assumption() {
  const std::string with_asm = std::string(kWindowSpec) +
                               "assumption 9/10 * ld[-1|0] <= ld[now] && ld[now] <= 11/10 * "
                               "ld[-1|100]\n";
  Specification spec_a = prep(with_asm);
  Specification spec_b = prep(kWindowSpec);

  for (uint64_t seed = 1; seed <= 20; ++seed) {
    TraceFile trace = gen_load({"ld"}, 100, 3000 + seed);
    SplitMix64 pick(4000 + seed);
    std::set<size_t> holes;
    while (holes.size() < 4) holes.insert(pick.below(100));  // 4% fully unknown
    for (size_t r : holes) trace.rows[r][0] = Reading::unknown();
    auto rows = readings_for(spec_b, trace);

    MonitorConfig cfg_a;
    cfg_a.lookback = 1;
    auto with = determined(run(spec_a, rows, cfg_a));
    auto without = determined(run(spec_b, rows, MonitorConfig{}));
    for (const auto& [k, v] : without) {
      auto it = with.find(k);
      if (it == with.end())
        return "seed " + std::to_string(seed) + ": assumption run lost a determined verdict";
      if (it->second != v)
        return "seed " + std::to_string(seed) + ": assumption run changed a determined value";
    }
    if (with.size() <= without.size())
      return "seed " + std::to_string(seed) + ": no strict gain (" + std::to_string(with.size()) +
             " vs " + std::to_string(without.size()) + " determined verdicts)";
  }
  return "";
}

// --- criterion 9: oracle batteries ----------------------------------------------

using OV = std::variant<bool, Rational>;
using Asg = std::map<InstantVar, Value>;

OV eval_sym(const SymExpr& e, const Asg& a) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return n.bval;
    case NodeKind::BoolVar:
      return a.at(n.var).b;
    case NodeKind::Not:
      return !std::get<bool>(eval_sym(n.kids[0], a));
    case NodeKind::And: {
      bool v = true;
      for (const auto& k : n.kids) v = v && std::get<bool>(eval_sym(k, a));
      return v;
    }
    case NodeKind::Or: {
      bool v = false;
      for (const auto& k : n.kids) v = v || std::get<bool>(eval_sym(k, a));
      return v;
    }
    case NodeKind::Xor: {
      bool v = false;
      for (const auto& k : n.kids) v = v != std::get<bool>(eval_sym(k, a));
      return v;
    }
    case NodeKind::BoolIte:
      return std::get<bool>(eval_sym(n.kids[0], a)) ? eval_sym(n.kids[1], a)
                                                    : eval_sym(n.kids[2], a);
    case NodeKind::Cmp: {
      Rational s = n.aff.constant;
      for (const auto& [v, c] : n.aff.terms) s += c * a.at(v).r;
      switch (n.op) {
        case CmpOp::Lt:
          return s < 0;
        case CmpOp::Le:
          return s <= 0;
        case CmpOp::Eq:
          return s == 0;
      }
      break;
    }
    case NodeKind::Affine: {
      Rational s = n.aff.constant;
      for (const auto& [v, c] : n.aff.terms) s += c * a.at(v).r;
      return s;
    }
  }
  throw std::logic_error("gate: bad node");
}

struct GenExpr {
  SymExpr e;
  std::function<OV(const Asg&)> f;  // built alongside e, never simplified
};

GenExpr gen_real(SplitMix64& rng, const std::vector<InstantVar>& rv, size_t depth);

GenExpr gen_bool(SplitMix64& rng, const std::vector<InstantVar>& rv,
                 const std::vector<InstantVar>& bv, size_t depth) {
  uint64_t pick = rng.below(depth == 0 ? 2 : 8);
  switch (pick) {
    case 0: {
      bool b = rng.chance(1, 2);
      return {sym_bool(b), [b](const Asg&) -> OV { return b; }};
    }
    case 1: {
      InstantVar v = bv[rng.below(bv.size())];
      return {sym_var(v), [v](const Asg& a) -> OV { return a.at(v).b; }};
    }
    case 2: {
      GenExpr k = gen_bool(rng, rv, bv, depth - 1);
      return {sym_not(k.e), [k](const Asg& a) -> OV { return !std::get<bool>(k.f(a)); }};
    }
    case 3:
    case 4:
    case 5: {
      GenExpr l = gen_bool(rng, rv, bv, depth - 1), r = gen_bool(rng, rv, bv, depth - 1);
      if (pick == 3)
        return {sym_and({l.e, r.e}), [l, r](const Asg& a) -> OV {
                  return std::get<bool>(l.f(a)) && std::get<bool>(r.f(a));
                }};
      if (pick == 4)
        return {sym_or({l.e, r.e}), [l, r](const Asg& a) -> OV {
                  return std::get<bool>(l.f(a)) || std::get<bool>(r.f(a));
                }};
      return {sym_xor({l.e, r.e}), [l, r](const Asg& a) -> OV {
                return std::get<bool>(l.f(a)) != std::get<bool>(r.f(a));
              }};
    }
    case 6: {
      GenExpr c = gen_bool(rng, rv, bv, depth - 1), t = gen_bool(rng, rv, bv, depth - 1),
              e = gen_bool(rng, rv, bv, depth - 1);
      return {sym_ite(c.e, t.e, e.e), [c, t, e](const Asg& a) -> OV {
                return std::get<bool>(c.f(a)) ? t.f(a) : e.f(a);
              }};
    }
    default: {
      GenExpr l = gen_real(rng, rv, depth - 1), r = gen_real(rng, rv, depth - 1);
      uint64_t op = rng.below(3);
      SymExpr e = op == 0 ? sym_lt(l.e, r.e) : op == 1 ? sym_le(l.e, r.e) : sym_eq(l.e, r.e);
      return {e, [l, r, op](const Asg& a) -> OV {
                Rational x = std::get<Rational>(l.f(a)), y = std::get<Rational>(r.f(a));
                return op == 0 ? x < y : op == 1 ? x <= y : x == y;
              }};
    }
  }
}

GenExpr gen_real(SplitMix64& rng, const std::vector<InstantVar>& rv, size_t depth) {
  uint64_t pick = rng.below(depth == 0 ? 2 : 5);
  switch (pick) {
    case 0: {
      Rational c = rat_frac(static_cast<long>(rng.below(17)) - 8,
                            static_cast<long>(rng.below(3)) + 1);
      return {sym_rat(c), [c](const Asg&) -> OV { return c; }};
    }
    case 1: {
      InstantVar v = rv[rng.below(rv.size())];
      return {sym_var(v), [v](const Asg& a) -> OV { return a.at(v).r; }};
    }
    case 2: {
      GenExpr l = gen_real(rng, rv, depth - 1), r = gen_real(rng, rv, depth - 1);
      return {sym_add(l.e, r.e), [l, r](const Asg& a) -> OV {
                return std::get<Rational>(l.f(a)) + std::get<Rational>(r.f(a));
              }};
    }
    case 3: {
      GenExpr l = gen_real(rng, rv, depth - 1), r = gen_real(rng, rv, depth - 1);
      return {sym_sub(l.e, r.e), [l, r](const Asg& a) -> OV {
                return std::get<Rational>(l.f(a)) - std::get<Rational>(r.f(a));
              }};
    }
    default: {
      Rational k = rat_frac(static_cast<long>(rng.below(9)) - 4,
                            static_cast<long>(rng.below(2)) + 1);
      GenExpr e = gen_real(rng, rv, depth - 1);
      return {sym_scale(k, e.e),
              [k, e](const Asg& a) -> OV { return k * std::get<Rational>(e.f(a)); }};
    }
  }
}

std::string battery_simplify(SplitMix64& rng) {
  std::vector<InstantVar> rv = {InstantVar::at(500, 0, Sort::Real),
                                InstantVar::at(501, 0, Sort::Real)};
  std::vector<InstantVar> bv = {InstantVar::at(502, 0, Sort::Bool),
                                InstantVar::at(503, 0, Sort::Bool)};
  for (int round = 0; round < 250; ++round) {
    GenExpr g = gen_bool(rng, rv, bv, 3);
    SymExpr s = simplify(g.e);
    for (int probe = 0; probe < 8; ++probe) {
      Asg a;
      for (const auto& v : rv)
        a[v] = Value::of_rat(Rational(static_cast<long>(rng.below(11)) - 5));
      for (const auto& v : bv) a[v] = Value::of_bool(rng.chance(1, 2));
      OV want = g.f(a);
      if (eval_sym(g.e, a) != want || eval_sym(s, a) != want)
        return "simplify battery: round " + std::to_string(round) + " changed meaning";
    }
  }
  return "";
}

std::string battery_fm_vs_vertices(SplitMix64& rng) {
  for (int round = 0; round < 200; ++round) {
    const size_t d = 2 + rng.below(2);
    std::vector<InstantVar> xs;
    for (size_t i = 0; i < d; ++i) xs.push_back(InstantVar::at(600 + i, 0, Sort::Real));

    std::vector<oracle::LinAtom> atoms;
    for (size_t i = 0; i < d; ++i) {  // bounding box keeps the polytope compact
      long lo = -static_cast<long>(2 + rng.below(4)), hi = static_cast<long>(2 + rng.below(4));
      std::vector<Rational> cl(d), ch(d);
      cl[i] = -1;
      ch[i] = 1;
      atoms.push_back({cl, Rational(lo), false});   // lo <= x_i
      atoms.push_back({ch, Rational(-hi), false});  // x_i <= hi
    }
    size_t extra = rng.below(4);
    for (size_t k = 0; k < extra; ++k) {
      std::vector<Rational> c(d);
      for (auto& v : c) v = Rational(static_cast<long>(rng.below(7)) - 3);
      atoms.push_back({c, Rational(static_cast<long>(rng.below(13)) - 6), rng.chance(1, 6)});
    }

    ConstraintSet C;
    for (const auto& a : atoms) {
      AffineForm f = AffineForm::of_const(a.c0);
      for (size_t i = 0; i < d; ++i)
        f = aff_add(f, aff_scale(a.coeffs[i], AffineForm::of_var(xs[i])));
      C.add(sym_cmp(a.eq ? CmpOp::Eq : CmpOp::Le, f));
    }

    for (size_t i = 0; i < d; ++i) {
      Bounds got = bounds_of(C, xs[i]);
      oracle::VertexBounds want = oracle::vertex_bounds(atoms, d, i);
      if (want.feasible == got.empty)
        return "bounds battery: round " + std::to_string(round) + " feasibility mismatch";
      if (!want.feasible) break;
      if (!got.lo || !got.hi || *got.lo != want.lo || *got.hi != want.hi || !got.lo_attained ||
          !got.hi_attained)
        return "bounds battery: round " + std::to_string(round) + " bound mismatch on x" +
               std::to_string(i);
    }
  }
  return "";
}

size_t mat_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::string battery_gaussian(SplitMix64& rng) {
  for (int round = 0; round < 200; ++round) {
    const size_t m = 1 + rng.below(4), n = 1 + rng.below(4);
    std::vector<std::vector<Rational>> N(m, std::vector<Rational>(n));
    for (auto& r : N)
      for (auto& v : r) v = Rational(static_cast<long>(rng.below(7)) - 3);

    LinearSystem sys;
    for (size_t j = 0; j < n; ++j) sys.columns.push_back(InstantVar::at(700 + j, 0, Sort::Real));
    for (size_t i = 0; i < m; ++i)
      sys.rows.push_back({InstantVar::at(800 + i, 0, Sort::Real), Rational(0), N[i],
                          Rational(static_cast<long>(rng.below(9)) - 4)});

    auto g = gaussian_solve(sys);
    if (!g) return "gaussian battery: solvable system reported inconsistent";
    const size_t r = g->rank;
    if (r != mat_rank(N))
      return "gaussian battery: round " + std::to_string(round) + " rank mismatch";
    if (g->basis.size() != m || (r > 0 && g->change_of_basis.size() != r))
      return "gaussian battery: round " + std::to_string(round) + " bad shape";
    if (r == 0) {
      for (const auto& row : N)
        for (const auto& v : row)
          if (v != 0) return "gaussian battery: rank 0 with nonzero row";
      continue;
    }
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational s(0);
        for (size_t k = 0; k < r; ++k) s += g->basis[i][k] * g->change_of_basis[k][j];
        if (s != N[i][j])
          return "gaussian battery: round " + std::to_string(round) + " basis*W != N";
      }
    if (mat_rank(g->basis) != r)
      return "gaussian battery: round " + std::to_string(round) + " dependent basis";
    // equal column spans: N's columns already lie in span(basis) via W; check
    // every basis column lies back in span(N)
    for (size_t k = 0; k < r; ++k) {
      std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(n + 1));
      for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = N[i][j];
        aug[i][n] = g->basis[i][k];
      }
      if (mat_rank(aug) != r)
        return "gaussian battery: round " + std::to_string(round) + " basis leaves col span";
    }
  }
  return "";
}

// Random window spec exercising deep offsets and chains across outputs.
Specification gen_deep_spec(SplitMix64& rng) {
  Specification sp;
  sp.streams.push_back({"x", Sort::Real, StreamKind::Input, std::nullopt, false});
  const size_t outs = 1 + rng.below(2);
  for (size_t o = 0; o < outs; ++o) {
    uint32_t self = static_cast<uint32_t>(1 + o);
    StreamExpr e = se_rat(Rational(static_cast<long>(rng.below(5)) - 2));
    size_t terms = 1 + rng.below(3);
    for (size_t k = 0; k < terms; ++k) {
      uint32_t s = static_cast<uint32_t>(rng.below(self + 1));
      int64_t off = -static_cast<int64_t>(rng.below(4));
      if (s == self && off == 0) off = -1;  // keep the dependency graph acyclic
      std::optional<Value> dflt;
      if (off < 0) dflt = Value::of_rat(Rational(static_cast<long>(rng.below(7)) - 3));
      Rational c(static_cast<long>(rng.below(5)) - 2);
      if (c == 0) c = 1;
      StreamExpr acc = se_offset(s, off, dflt);
      e = se_fun(Op::Add, {e, c == 1 ? acc : se_fun(Op::Mul, {se_rat(c), acc})});
    }
    sp.streams.push_back({"w" + std::to_string(o), Sort::Real, StreamKind::Output, e, false});
  }
  return sp;
}

// Share-style spec whose Real ite must be rewritten before monitoring.
Specification gen_ite_spec(SplitMix64& rng) {
  Specification sp;
  sp.streams.push_back({"b", Sort::Bool, StreamKind::Input, std::nullopt, false});
  sp.streams.push_back({"x", Sort::Real, StreamKind::Input, std::nullopt, false});
  auto arm = [&]() {
    StreamExpr e = se_rat(Rational(static_cast<long>(rng.below(7)) - 3));
    if (rng.chance(2, 3)) {
      Rational c(static_cast<long>(rng.below(5)) - 2);
      if (c == 0) c = 1;
      StreamExpr t = se_offset(1, 0, std::nullopt);
      e = se_fun(Op::Add, {e, c == 1 ? t : se_fun(Op::Mul, {se_rat(c), t})});
    }
    return e;
  };
  StreamExpr cond = rng.chance(1, 2)
                        ? se_offset(0, 0, std::nullopt)
                        : se_fun(Op::Le, {se_offset(1, 0, std::nullopt),
                                          se_rat(Rational(static_cast<long>(rng.below(7)) - 3))});
  StreamExpr body = se_ite(cond, arm(), arm());
  if (rng.chance(1, 2))
    body = se_fun(Op::Add,
                  {body, se_offset(2, -1, Value::of_rat(Rational(static_cast<long>(rng.below(5)))))});
  sp.streams.push_back({"o", Sort::Real, StreamKind::Output, body, false});
  return sp;
}

std::string battery_rewrites(SplitMix64& rng) {
  // Deep-offset flattening preserves every original stream column.
  for (int round = 0; round < 100; ++round) {
    Specification spec = gen_deep_spec(rng);
    Specification flat = flatten(spec);
    const int64_t len = 5 + static_cast<int64_t>(rng.below(6));
    std::vector<Value> xs;
    for (int64_t t = 0; t < len; ++t)
      xs.push_back(Value::of_rat(Rational(static_cast<long>(rng.below(9)) - 4)));
    auto want = oracle::eval_streams(spec, {xs}, len);
    ConcreteTrace in(flat.streams.size());
    in[0] = xs;
    ConcreteTrace got = eval_concrete(flat, in, len);
    for (uint32_t s = 0; s < spec.streams.size(); ++s)
      for (int64_t t = 0; t < len; ++t)
        if (got[s][static_cast<size_t>(t)] != want[s][static_cast<size_t>(t)])
          return "flatten battery: round " + std::to_string(round) + " diverges at (" +
                 spec.streams[s].name + ", " + std::to_string(t) + ")";
  }

  // Real-ite elimination: the rewritten spec must monitor to the very values
  // the original ite semantics computes.
  for (int round = 0; round < 100; ++round) {
    Specification spec = gen_ite_spec(rng);
    Specification rw = rewrite_ite(flatten(spec));
    if (classify_fragment(rw) == Fragment::B_LA_ite)
      return "ite battery: rewrite left an ite behind";
    uint32_t o = *rw.index_of("o");
    const int64_t len = 6;
    std::vector<Value> bs, xs;
    std::vector<std::map<uint32_t, Reading>> rows;
    for (int64_t t = 0; t < len; ++t) {
      bs.push_back(Value::of_bool(rng.chance(1, 2)));
      xs.push_back(Value::of_rat(Rational(static_cast<long>(rng.below(9)) - 4)));
      rows.push_back({{0, Reading::exact_of(bs.back())}, {1, Reading::exact_of(xs.back())}});
    }
    auto want = oracle::eval_streams(spec, {bs, xs}, len);
    auto det = determined(run(rw, rows, MonitorConfig{}));
    for (int64_t t = 0; t < len; ++t) {
      auto it = det.find({t, o});
      if (it == det.end())
        return "ite battery: round " + std::to_string(round) + " left o^" + std::to_string(t) +
               " undetermined on exact inputs";
      if (it->second != to_string(want[o][static_cast<size_t>(t)]))
        return "ite battery: round " + std::to_string(round) + " o^" + std::to_string(t) +
               " = " + it->second + ", want " + to_string(want[o][static_cast<size_t>(t)]);
    }
  }
  return "";
}

std::string c9_batteries() {
  SplitMix64 rng(9009);
  if (auto r = battery_simplify(rng); !r.empty()) return r;
  if (auto r = battery_fm_vs_vertices(rng); !r.empty()) return r;
  if (auto r = battery_gaussian(rng); !r.empty()) return r;
  if (auto r = battery_rewrites(rng); !r.empty()) return r;
  return "";
}

}  // namespace

int main() {
  Gate gate;
  gate.criterion(1, "golden sliding-window run (exact, range, interval)", 1.0, c1_golden);
  gate.criterion(2, "user-share run under a range assumption", 0, c2_share);
  gate.criterion(3, "Boolean pruning perfectness and size bound (200 specs)", 60.0,
                 [] { return perfectness_battery(true); });
  gate.criterion(4, "linear pruning perfectness and size bound (200 specs)", 60.0,
                 [] { return perfectness_battery(false); });
  gate.criterion(5, "mixed pruning soundness and polygon witness", 60.0, c5_mixed);
  gate.criterion(6, "max live measure independent of trace length", 120.0, c6_lengths);
  gate.criterion(7, "burst recovery on the peak detector", 0, c7_bursts);
  gate.criterion(8, "step-bound assumption recovers verdicts (20 seeds)", 0, c8_assumption);
  gate.criterion(9, "oracle batteries: simplify, bounds, gaussian, rewrites", 120.0, c9_batteries);
  if (gate.failed) {
    std::cout << gate.failed << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lolasym/errors.hpp"
#include "lolasym/interval.hpp"
#include "lolasym/monitor.hpp"
#include "lolasym/spec_ast.hpp"
#include "lolasym/trace.hpp"

namespace {

using namespace lolasym;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Flattened form shared by both engines; the symbolic engine additionally
// needs real-valued ite compiled away.
Specification load_flat_spec(const std::string& path) {
  Specification spec = parse_spec(read_file(path));
  Specification flat = flatten(spec);
  Fragment f = classify_fragment(flat);
  if (f == Fragment::Unsupported)
    throw SpecError("specification is outside the supported fragment "
                    "(Boolean operators, linear real arithmetic, real-valued ite)");
  return flat;
}

Specification symbolic_form(const Specification& flat) {
  return classify_fragment(flat) == Fragment::B_LA_ite ? rewrite_ite(flat) : flat;
}

std::vector<std::string> input_names(const Specification& spec) {
  std::vector<std::string> names;
  for (const auto& s : spec.streams)
    if (s.kind == StreamKind::Input) names.push_back(s.name);
  return names;
}

double us_per_event(std::chrono::steady_clock::duration d, size_t events) {
  if (events == 0) return 0.0;
  auto us = std::chrono::duration_cast<std::chrono::duration<double, std::micro>>(d);
  return us.count() / static_cast<double>(events);
}

int cmd_run(const std::string& spec_path, const std::string& trace_path, bool no_prune,
            int64_t lookback, bool use_abs) {
  Specification flat = load_flat_spec(spec_path);
  TraceFile tf = load_trace(trace_path);
  if (use_abs) {
    auto readings = readings_for(flat, tf);
    IntervalMonitor mon(flat);
    for (const auto& w : mon.warnings()) std::cerr << "warning: " << w << "\n";
    for (const auto& row : readings) {
      int64_t t = mon.now();
      for (const auto& [stream, val] : mon.step(row))
        std::cout << abs_line(flat, t, stream, val) << "\n";
    }
    return 0;
  }
  Specification sym = symbolic_form(flat);
  auto readings = readings_for(sym, tf);
  MonitorConfig cfg;
  cfg.pruning = !no_prune;
  cfg.lookback = lookback;
  RunResult res = run(sym, readings, cfg);
  for (const auto& v : res.verdicts) std::cout << verdict_line(sym, v) << "\n";
  return 0;
}

int cmd_inject(const std::string& trace_path, const std::vector<std::string>& perturb_args,
               const std::vector<uint64_t>& burst_args, uint64_t seed) {
  TraceFile tf = load_trace(trace_path);
  if (perturb_args.empty() == burst_args.empty())
    throw SpecError("inject needs exactly one of --perturb or --bursts");
  TraceFile out;
  std::vector<std::string> warnings;
  if (!perturb_args.empty()) {
    auto x = parse_rational(perturb_args[0]);
    auto y = parse_rational(perturb_args[1]);
    if (!x || !y) throw SpecError("malformed --perturb argument");
    out = inject_perturb(tf, Perturb{*x, *y, seed}, &warnings);
  } else {
    out = inject_bursts(tf, Bursts{static_cast<size_t>(burst_args[0]),
                                   static_cast<size_t>(burst_args[1]),
                                   static_cast<size_t>(burst_args[2]), seed});
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << format_trace(out);
  return 0;
}

int cmd_compare(const std::string& spec_path, const std::string& trace_path) {
  Specification flat = load_flat_spec(spec_path);
  Specification sym = symbolic_form(flat);
  TraceFile tf = load_trace(trace_path);
  const size_t T = tf.rows.size();

  auto sym_readings = readings_for(sym, tf);
  auto t0 = std::chrono::steady_clock::now();
  RunResult res = run(sym, sym_readings, MonitorConfig{});
  auto sym_dur = std::chrono::steady_clock::now() - t0;

  // Final determined value per (t, stream): revised records override.
  std::map<std::pair<int64_t, uint32_t>, std::optional<Value>> sym_state;
  for (const auto& v : res.verdicts) {
    std::optional<Value> det;
    if (v.concrete)
      det = *v.concrete;
    else if (v.tri)
      det = Value::of_bool(*v.tri);
    auto key = std::make_pair(v.t, v.stream);
    if (v.kind == VerdictKind::Revised) {
      if (det) sym_state[key] = det;
    } else {
      sym_state[key] = det;
    }
  }

  auto abs_readings = readings_for(flat, tf);
  IntervalMonitor mon(flat);
  for (const auto& w : mon.warnings()) std::cerr << "warning: " << w << "\n";
  std::map<std::pair<int64_t, uint32_t>, std::optional<Value>> abs_state;
  t0 = std::chrono::steady_clock::now();
  for (const auto& row : abs_readings) {
    int64_t t = mon.now();
    for (const auto& [stream, val] : mon.step(row)) {
      std::optional<Value> det;
      if (val.determined())
        det = val.sort == Sort::Bool ? Value::of_bool(val.b == Bool3::True)
                                     : Value::of_rat(*val.iv.lo);
      abs_state[{t, stream}] = det;
    }
  }
  auto abs_dur = std::chrono::steady_clock::now() - t0;

  std::map<uint32_t, size_t> sym_det, abs_det;
  std::vector<uint32_t> outputs;
  for (uint32_t s = 0; s < flat.streams.size(); ++s)
    if (flat.streams[s].kind == StreamKind::Output && !flat.streams[s].synthetic)
      outputs.push_back(s);
  for (const auto& [key, det] : sym_state)
    if (det) ++sym_det[key.second];
  for (const auto& [key, det] : abs_state)
    if (det) ++abs_det[key.second];

  struct Disagreement {
    int64_t t;
    uint32_t stream;
    Value sym_v, abs_v;
  };
  std::vector<Disagreement> bad;
  for (const auto& [key, det] : sym_state) {
    if (!det) continue;
    auto it = abs_state.find(key);
    if (it == abs_state.end() || !it->second) continue;
    const Value& a = *it->second;
    bool same = det->sort == a.sort &&
                (det->sort == Sort::Bool ? det->b == a.b : det->r == a.r);
    if (!same) bad.push_back({key.first, key.second, *det, a});
  }

  auto value_str = [](const Value& v) {
    return v.sort == Sort::Bool ? std::string(v.b ? "tt" : "ff") : rat_to_string(v.r);
  };

  std::cout << "stream,sym_determined,sym_undetermined,abs_determined,abs_undetermined\n";
  for (uint32_t s : outputs)
    std::cout << flat.streams[s].name << "," << sym_det[s] << "," << (T - sym_det[s]) << ","
              << abs_det[s] << "," << (T - abs_det[s]) << "\n";
  for (const auto& d : bad)
    std::cout << "disagreement," << d.t << "," << flat.streams[d.stream].name << ","
              << value_str(d.sym_v) << "," << value_str(d.abs_v) << "\n";
  std::cout << "metric,value\n";
  std::cout << "disagreements," << bad.size() << "\n";
  std::cout << "max_measure," << res.max_measure << "\n";
  std::cout << "us_per_event_symbolic," << us_per_event(sym_dur, T) << "\n";
  std::cout << "us_per_event_interval," << us_per_event(abs_dur, T) << "\n";
  require(bad.empty(), "determined verdicts disagree between the symbolic and interval engines");
  return 0;
}

int cmd_bench(const std::string& spec_path, const std::vector<size_t>& lengths,
              const std::string& gen, uint64_t seed, bool no_prune) {
  Specification flat = load_flat_spec(spec_path);
  Specification sym = symbolic_form(flat);
  std::vector<std::string> inputs = input_names(sym);

  std::cout << "length,us_per_event,max_measure\n";
  std::vector<uint64_t> maxima;
  for (size_t len : lengths) {
    TraceFile tf;
    if (gen == "unknown")
      tf = gen_unknown(inputs, len);
    else if (gen == "load")
      tf = gen_load(inputs, len, seed);
    else if (gen == "spike")
      tf = gen_spike(inputs, len, seed);
    else
      throw SpecError("unknown generator '" + gen + "' (expected unknown|load|spike)");
    auto readings = readings_for(sym, tf);
    MonitorConfig cfg;
    cfg.pruning = !no_prune;
    auto t0 = std::chrono::steady_clock::now();
    RunResult res = run(sym, readings, cfg);
    auto dur = std::chrono::steady_clock::now() - t0;
    std::cout << len << "," << us_per_event(dur, len) << "," << res.max_measure << "\n";
    maxima.push_back(res.max_measure);
  }
  if (!no_prune)
    for (uint64_t m : maxima)
      require(m == maxima.front(), "max measure varies across lengths despite pruning");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online symbolic stream runtime verifier"};
  app.require_subcommand(1);

  std::string spec_path, trace_path;
  bool no_prune = false, use_abs = false;
  int64_t lookback = -1;
  uint64_t seed = 0;
  std::vector<std::string> perturb_args;
  std::vector<uint64_t> burst_args;
  std::vector<size_t> lengths;
  std::string gen = "unknown";

  auto* run_cmd = app.add_subcommand("run", "Monitor a trace against a specification");
  run_cmd->add_option("spec", spec_path, "specification file")->required();
  run_cmd->add_option("trace", trace_path, "trace file")->required();
  run_cmd->add_flag("--no-prune", no_prune, "keep all constraints (reference mode)");
  run_cmd->add_option("--lookback", lookback,
                      "constraint retention window in instants (default: derived from the "
                      "assumptions; may only enlarge it)");
  run_cmd->add_flag("--abs", use_abs, "use the interval / three-valued engine instead");

  auto* inject_cmd = app.add_subcommand("inject", "Inject uncertainty into a trace");
  inject_cmd->add_option("trace", trace_path, "trace file")->required();
  inject_cmd->add_option("--perturb", perturb_args,
                         "fraction x and relative width y: widen x of the Real cells to "
                         "ranges v*(1-y)..v*(1+y)")
      ->expected(2);
  inject_cmd->add_option("--bursts", burst_args,
                         "count, min length, max length: overwrite windows with ?")
      ->expected(3);
  inject_cmd->add_option("--seed", seed, "RNG seed");

  auto* compare_cmd =
      app.add_subcommand("compare", "Run both engines and report precision/cost");
  compare_cmd->add_option("spec", spec_path, "specification file")->required();
  compare_cmd->add_option("trace", trace_path, "trace file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "Time the monitor on generated traces");
  bench_cmd->add_option("spec", spec_path, "specification file")->required();
  bench_cmd->add_option("--lengths", lengths, "trace lengths to run")->required();
  bench_cmd->add_option("--gen", gen, "trace generator: unknown|load|spike");
  bench_cmd->add_option("--seed", seed, "RNG seed");
  bench_cmd->add_flag("--no-prune", no_prune, "keep all constraints (reference mode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return cmd_run(spec_path, trace_path, no_prune, lookback, use_abs);
    if (*inject_cmd) return cmd_inject(trace_path, perturb_args, burst_args, seed);
    if (*compare_cmd) return cmd_compare(spec_path, trace_path);
    if (*bench_cmd) return cmd_bench(spec_path, lengths, gen, seed, no_prune);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

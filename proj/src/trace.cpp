#include "lolasym/trace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lolasym/errors.hpp"
#include "lolasym/rng.hpp"

namespace lolasym {

bool operator==(const TraceFile& a, const TraceFile& b) {
  return a.header == b.header && a.rows == b.rows;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Comma split that keeps [a,b] cells intact.
std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : line) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

Reading parse_cell(const std::string& cell, int line_no) {
  if (cell == "?") return Reading::unknown();
  if (cell == "tt") return Reading::exact_of(Value::of_bool(true));
  if (cell == "ff") return Reading::exact_of(Value::of_bool(false));
  if (!cell.empty() && cell.front() == '[') {
    if (cell.back() != ']')
      throw SpecError("malformed range cell '" + cell + "'", line_no, 1);
    std::string inner = cell.substr(1, cell.size() - 2);
    size_t comma = inner.find(',');
    if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos)
      throw SpecError("malformed range cell '" + cell + "'", line_no, 1);
    auto lo = parse_rational(trim(inner.substr(0, comma)));
    auto hi = parse_rational(trim(inner.substr(comma + 1)));
    if (!lo || !hi) throw SpecError("malformed range cell '" + cell + "'", line_no, 1);
    if (*lo > *hi) throw SpecError("empty range cell '" + cell + "'", line_no, 1);
    return Reading::range(*lo, *hi);
  }
  auto v = parse_rational(cell);
  if (!v) throw SpecError("malformed cell '" + cell + "'", line_no, 1);
  return Reading::exact_of(Value::of_rat(*v));
}

Rational round_hundredths(const Rational& w) {
  Rational scaled = w * 100;
  mpz_class num2 = 2 * scaled.get_num() + scaled.get_den();
  mpz_class den2 = 2 * scaled.get_den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num2.get_mpz_t(), den2.get_mpz_t());
  Rational r(q, 100);
  r.canonicalize();
  return r;
}

}  // namespace

TraceFile parse_trace(const std::string& text) {
  TraceFile t;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    if (trim(raw).empty()) continue;
    std::vector<std::string> cells = split_row(raw);
    if (t.header.empty()) {
      std::set<std::string> seen;
      for (const auto& name : cells) {
        if (name.empty()) throw SpecError("empty header name", line_no, 1);
        if (!seen.insert(name).second)
          throw SpecError("duplicate trace column '" + name + "'", line_no, 1);
      }
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size())
      throw SpecError("row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(t.header.size()),
                      line_no, 1);
    std::vector<Reading> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_cell(c, line_no));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw SpecError("trace has no header row");
  return t;
}

TraceFile load_trace(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open trace file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_trace(ss.str());
}

std::string format_reading(const Reading& r) {
  switch (r.kind) {
    case Reading::Kind::Unknown:
      return "?";
    case Reading::Kind::Exact:
      return r.exact.sort == Sort::Bool ? (r.exact.b ? "tt" : "ff") : rat_to_cell(r.exact.r);
    case Reading::Kind::Range:
      return "[" + rat_to_cell(r.lo) + "," + rat_to_cell(r.hi) + "]";
  }
  throw InternalError("unreachable reading kind");
}

std::string format_trace(const TraceFile& t) {
  std::ostringstream out;
  for (size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_reading(row[i]);
    out << "\n";
  }
  return out.str();
}

void save_trace(const TraceFile& t, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw SpecError("cannot write trace file '" + path + "'");
  f << format_trace(t);
}

std::vector<std::map<uint32_t, Reading>> readings_for(const Specification& spec,
                                                      const TraceFile& t) {
  std::vector<uint32_t> cols;
  std::set<uint32_t> used;
  for (const auto& name : t.header) {
    auto idx = spec.index_of(name);
    if (!idx || spec.streams[*idx].kind != StreamKind::Input)
      throw SpecError("trace column '" + name + "' does not name an input stream");
    if (!used.insert(*idx).second)
      throw SpecError("duplicate trace column '" + name + "'");
    cols.push_back(*idx);
  }
  for (uint32_t s = 0; s < spec.streams.size(); ++s)
    if (spec.streams[s].kind == StreamKind::Input && !used.count(s))
      throw SpecError("trace is missing input stream '" + spec.streams[s].name + "'");

  std::vector<std::map<uint32_t, Reading>> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    std::map<uint32_t, Reading> m;
    for (size_t c = 0; c < row.size(); ++c)
      if (row[c].kind != Reading::Kind::Unknown) m.emplace(cols[c], row[c]);
    out.push_back(std::move(m));
  }
  return out;
}

TraceFile inject_perturb(const TraceFile& t, const Perturb& plan,
                         std::vector<std::string>* warnings) {
  if (plan.fraction < 0 || plan.fraction > 1) throw SpecError("perturb fraction must be in [0,1]");
  if (plan.width < 0 || plan.width > 1) throw SpecError("perturb width must be in [0,1]");
  TraceFile out = t;
  std::vector<std::pair<size_t, size_t>> cells;
  size_t bool_cells = 0;
  for (size_t r = 0; r < out.rows.size(); ++r)
    for (size_t c = 0; c < out.rows[r].size(); ++c) {
      const Reading& rd = out.rows[r][c];
      if (rd.kind != Reading::Kind::Exact) continue;
      if (rd.exact.sort == Sort::Real)
        cells.emplace_back(r, c);
      else
        ++bool_cells;
    }
  if (bool_cells > 0 && warnings)
    warnings->push_back("perturb skipped " + std::to_string(bool_cells) + " Boolean cell(s)");

  Rational picked = plan.fraction * Rational(static_cast<long>(cells.size()));
  mpz_class m_z = picked.get_num() / picked.get_den();
  size_t m = m_z.get_ui();

  SplitMix64 rng(plan.seed);
  for (size_t i = 0; i < m; ++i) {
    size_t j = i + static_cast<size_t>(rng.below(cells.size() - i));
    std::swap(cells[i], cells[j]);
    auto [r, c] = cells[i];
    const Rational v = out.rows[r][c].exact.r;
    Rational lo = v * (Rational(1) - plan.width);
    Rational hi = v * (Rational(1) + plan.width);
    if (lo > hi) std::swap(lo, hi);  // negative base value
    out.rows[r][c] = Reading::range(lo, hi);
  }
  return out;
}

TraceFile inject_bursts(const TraceFile& t, const Bursts& plan) {
  if (plan.min_len > plan.max_len) throw SpecError("burst length range is empty");
  TraceFile out = t;
  const size_t T = out.rows.size();
  if (T == 0 || plan.count == 0) return out;
  SplitMix64 rng(plan.seed);
  for (size_t k = 0; k < plan.count; ++k) {
    size_t len = plan.min_len + static_cast<size_t>(rng.below(plan.max_len - plan.min_len + 1));
    len = std::min(len, T);
    size_t start = static_cast<size_t>(rng.below(T - len + 1));
    for (size_t r = start; r < start + len; ++r)
      for (auto& cell : out.rows[r]) cell = Reading::unknown();
  }
  return out;
}

TraceFile gen_unknown(std::vector<std::string> header, size_t len) {
  TraceFile t;
  t.header = std::move(header);
  t.rows.assign(len, std::vector<Reading>(t.header.size(), Reading::unknown()));
  return t;
}

TraceFile gen_load(std::vector<std::string> header, size_t len, uint64_t seed) {
  TraceFile t;
  t.header = std::move(header);
  SplitMix64 rng(seed);
  std::vector<Rational> state(t.header.size());
  for (auto& v : state) v = rat_frac(static_cast<long>(400 + rng.below(201)), 100);
  const Rational lo_clamp(1, 2), hi_clamp(10);
  for (size_t r = 0; r < len; ++r) {
    std::vector<Reading> row;
    row.reserve(state.size());
    for (auto& v : state) {
      row.push_back(Reading::exact_of(Value::of_rat(v)));
      Rational u = rat_frac(static_cast<long>(92 + rng.below(17)), 100);
      Rational w = round_hundredths(v * u);
      if (w < lo_clamp) w = lo_clamp;
      if (w > hi_clamp) w = hi_clamp;
      v = w;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TraceFile gen_spike(std::vector<std::string> header, size_t len, uint64_t seed) {
  TraceFile t;
  t.header = std::move(header);
  SplitMix64 rng(seed);
  for (size_t r = 0; r < len; ++r) {
    std::vector<Reading> row;
    row.reserve(t.header.size());
    for (size_t c = 0; c < t.header.size(); ++c) {
      size_t pos = r % 25;
      Rational v =
          (pos >= 10 && pos < 18) ? Rational(10) : rat_frac(static_cast<long>(100 + rng.below(5)), 100);
      row.push_back(Reading::exact_of(Value::of_rat(v)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace lolasym

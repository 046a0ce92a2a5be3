#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lolasym/semantics.hpp"
#include "lolasym/spec_ast.hpp"

namespace lolasym {

// Comma-separated trace: a header row naming the input streams, then one row
// per instant.  Cells: tt | ff | decimal or p/q | [a,b] | ?.  '#' starts a
// comment; blank lines are skipped.
struct TraceFile {
  std::vector<std::string> header;
  std::vector<std::vector<Reading>> rows;  // rows[t][column]
};

bool operator==(const TraceFile& a, const TraceFile& b);

TraceFile parse_trace(const std::string& text);
TraceFile load_trace(const std::string& path);
std::string format_trace(const TraceFile& t);
void save_trace(const TraceFile& t, const std::string& path);

std::string format_reading(const Reading& r);

// Column-to-stream mapping; the header must name exactly the declared inputs
// (any order, no duplicates, no extras).
std::vector<std::map<uint32_t, Reading>> readings_for(const Specification& spec,
                                                      const TraceFile& t);

// Replaces floor(fraction * N) uniformly chosen exact Real cells v (N = their
// total count) by the range [v*(1-width), v*(1+width)].  Boolean cells never
// qualify; their presence is reported through `warnings`.
struct Perturb {
  Rational fraction;  // in [0,1]
  Rational width;     // in [0,1]
  uint64_t seed = 0;
};
TraceFile inject_perturb(const TraceFile& t, const Perturb& plan,
                         std::vector<std::string>* warnings = nullptr);

// Overwrites `count` whole-row windows with Unknown; window lengths drawn
// uniformly from [min_len, max_len], starts uniform over the trace.
struct Bursts {
  size_t count = 0;
  size_t min_len = 0;
  size_t max_len = 0;
  uint64_t seed = 0;
};
TraceFile inject_bursts(const TraceFile& t, const Bursts& plan);

// Synthetic input generators for benchmarks and case studies.
TraceFile gen_unknown(std::vector<std::string> header, size_t len);
// Multiplicative random walk: each step scales by a factor in [0.92, 1.08]
// (strictly inside the 0.9/1.1 assumption band so 2-decimal rounding cannot
// breach it), clamped to [1/2, 10].
TraceFile gen_load(std::vector<std::string> header, size_t len, uint64_t seed);
// Low jittered baseline with periodic 8-step spikes of value 10 (period 25).
TraceFile gen_spike(std::vector<std::string> header, size_t len, uint64_t seed);

}  // namespace lolasym

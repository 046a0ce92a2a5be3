#include "lolasym/spec_ast.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lolasym/errors.hpp"

namespace lolasym {

// --- values -------------------------------------------------------------------

Value Value::of_bool(bool v) {
  Value x;
  x.sort = Sort::Bool;
  x.b = v;
  return x;
}

Value Value::of_rat(Rational v) {
  Value x;
  x.sort = Sort::Real;
  x.r = std::move(v);
  return x;
}

bool operator==(const Value& a, const Value& b) {
  if (a.sort != b.sort) return false;
  return a.sort == Sort::Bool ? a.b == b.b : a.r == b.r;
}

std::string to_string(const Value& v) {
  if (v.sort == Sort::Bool) return v.b ? "tt" : "ff";
  return rat_to_cell(v.r);
}

// --- expression constructors ----------------------------------------------------

namespace {

StreamExpr make(SNode n) { return StreamExpr(std::make_shared<const SNode>(std::move(n))); }

}  // namespace

StreamExpr se_const(Value v) {
  SNode n;
  n.kind = SNode::Kind::Const;
  n.cval = std::move(v);
  return make(std::move(n));
}

StreamExpr se_bool(bool v) { return se_const(Value::of_bool(v)); }
StreamExpr se_rat(Rational v) { return se_const(Value::of_rat(std::move(v))); }

StreamExpr se_offset(uint32_t stream, int64_t offset, std::optional<Value> dflt) {
  require(offset == 0 ? !dflt.has_value() : dflt.has_value(),
          "offset access needs a default exactly when the offset is nonzero");
  SNode n;
  n.kind = SNode::Kind::Offset;
  n.stream = stream;
  n.offset = offset;
  n.dflt = std::move(dflt);
  return make(std::move(n));
}

StreamExpr se_fun(Op op, std::vector<StreamExpr> args) {
  // Fold negated Real literals so that `-3` has one canonical representation.
  // (A negated Bool literal is left for the sort checker to reject.)
  if (op == Op::Neg && args.size() == 1 && args[0].node().kind == SNode::Kind::Const &&
      args[0].node().cval.sort == Sort::Real) {
    return se_rat(-args[0].node().cval.r);
  }
  SNode n;
  n.kind = SNode::Kind::Fun;
  n.op = op;
  n.args = std::move(args);
  return make(std::move(n));
}

StreamExpr se_ite(StreamExpr c, StreamExpr t, StreamExpr e) {
  SNode n;
  n.kind = SNode::Kind::Ite;
  n.args = {std::move(c), std::move(t), std::move(e)};
  return make(std::move(n));
}

bool operator==(const StreamExpr& a, const StreamExpr& b) {
  const SNode& x = a.node();
  const SNode& y = b.node();
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case SNode::Kind::Const:
      return x.cval == y.cval;
    case SNode::Kind::Offset:
      return x.stream == y.stream && x.offset == y.offset && x.dflt == y.dflt;
    case SNode::Kind::Fun:
      if (x.op != y.op) return false;
      [[fallthrough]];
    case SNode::Kind::Ite:
      if (x.args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x.args.size(); ++i)
        if (!(x.args[i] == y.args[i])) return false;
      return true;
  }
  return false;
}

// --- declarations ----------------------------------------------------------------

std::optional<uint32_t> Specification::index_of(const std::string& name) const {
  for (uint32_t i = 0; i < streams.size(); ++i)
    if (streams[i].name == name) return i;
  return std::nullopt;
}

int64_t Specification::assumption_lookback() const {
  int64_t l = 0;
  for (const auto& a : assumptions) l = std::max(l, max_lookback(a));
  return l;
}

bool operator==(const StreamDecl& a, const StreamDecl& b) {
  if (a.name != b.name || a.sort != b.sort || a.kind != b.kind) return false;
  if (a.def.has_value() != b.def.has_value()) return false;
  return !a.def || *a.def == *b.def;
}

bool operator==(const Specification& a, const Specification& b) {
  if (a.streams.size() != b.streams.size() || a.assumptions.size() != b.assumptions.size())
    return false;
  for (size_t i = 0; i < a.streams.size(); ++i)
    if (!(a.streams[i] == b.streams[i])) return false;
  for (size_t i = 0; i < a.assumptions.size(); ++i)
    if (!(a.assumptions[i] == b.assumptions[i])) return false;
  return true;
}

// --- structural queries -------------------------------------------------------------

Sort sort_of(const StreamExpr& e, const Specification& spec) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval.sort;
    case SNode::Kind::Offset:
      return spec.streams[n.stream].sort;
    case SNode::Kind::Fun:
      switch (n.op) {
        case Op::Not:
        case Op::And:
        case Op::Or:
        case Op::Xor:
        case Op::Implies:
        case Op::Lt:
        case Op::Le:
        case Op::Eq:
          return Sort::Bool;
        default:
          return Sort::Real;
      }
    case SNode::Kind::Ite:
      return sort_of(n.args[1], spec);
  }
  throw InternalError("unreachable stream expression kind");
}

std::optional<Value> fold_const(const StreamExpr& e) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval;
    case SNode::Kind::Offset:
      return std::nullopt;
    case SNode::Kind::Fun: {
      std::vector<Value> vs;
      for (const auto& a : n.args) {
        auto v = fold_const(a);
        if (!v) return std::nullopt;
        vs.push_back(*v);
      }
      switch (n.op) {
        case Op::Not:
          return Value::of_bool(!vs[0].b);
        case Op::And:
          return Value::of_bool(vs[0].b && vs[1].b);
        case Op::Or:
          return Value::of_bool(vs[0].b || vs[1].b);
        case Op::Xor:
          return Value::of_bool(vs[0].b != vs[1].b);
        case Op::Implies:
          return Value::of_bool(!vs[0].b || vs[1].b);
        case Op::Add:
          return Value::of_rat(vs[0].r + vs[1].r);
        case Op::Sub:
          return Value::of_rat(vs[0].r - vs[1].r);
        case Op::Neg:
          return Value::of_rat(-vs[0].r);
        case Op::Mul:
          return Value::of_rat(vs[0].r * vs[1].r);
        case Op::Lt:
          return Value::of_bool(vs[0].r < vs[1].r);
        case Op::Le:
          return Value::of_bool(vs[0].r <= vs[1].r);
        case Op::Eq:
          return Value::of_bool(vs[0].r == vs[1].r);
      }
      return std::nullopt;
    }
    case SNode::Kind::Ite: {
      auto c = fold_const(n.args[0]);
      if (!c) return std::nullopt;
      return fold_const(c->b ? n.args[1] : n.args[2]);
    }
  }
  return std::nullopt;
}

int64_t max_lookback(const StreamExpr& e) {
  const SNode& n = e.node();
  int64_t m = 0;
  if (n.kind == SNode::Kind::Offset && n.offset < 0) m = -n.offset;
  for (const auto& a : n.args) m = std::max(m, max_lookback(a));
  return m;
}

// --- printing --------------------------------------------------------------------

namespace {

// Mirrors the parser's precedence: unary < * < +- < comparison < && < ^ < || < ->.
int op_prec(Op op) {
  switch (op) {
    case Op::Not:
    case Op::Neg:
      return 1;
    case Op::Mul:
      return 2;
    case Op::Add:
    case Op::Sub:
      return 3;
    case Op::Lt:
    case Op::Le:
    case Op::Eq:
      return 4;
    case Op::And:
      return 5;
    case Op::Xor:
      return 6;
    case Op::Or:
      return 7;
    case Op::Implies:
      return 8;
  }
  return 0;
}

const char* op_token(Op op) {
  switch (op) {
    case Op::Not:
      return "not ";
    case Op::Neg:
      return "-";
    case Op::Mul:
      return "*";
    case Op::Add:
      return " + ";
    case Op::Sub:
      return " - ";
    case Op::Lt:
      return " < ";
    case Op::Le:
      return " <= ";
    case Op::Eq:
      return " = ";
    case Op::And:
      return " && ";
    case Op::Xor:
      return " ^ ";
    case Op::Or:
      return " || ";
    case Op::Implies:
      return " -> ";
  }
  return "?";
}

std::string print_expr(const StreamExpr& e, const Specification& spec, int allowance) {
  const SNode& n = e.node();
  std::string out;
  int prec = 0;
  switch (n.kind) {
    case SNode::Kind::Const:
      out = to_string(n.cval);
      break;
    case SNode::Kind::Offset:
      out = spec.streams[n.stream].name;
      if (n.offset == 0)
        out += "[now]";
      else
        out += "[" + std::to_string(n.offset) + "|" + to_string(*n.dflt) + "]";
      break;
    case SNode::Kind::Fun: {
      prec = op_prec(n.op);
      if (n.args.size() == 1) {
        out = std::string(op_token(n.op)) + print_expr(n.args[0], spec, n.op == Op::Neg ? 0 : 1);
      } else {
        // Comparisons are non-associative; -> is right-associative; the rest
        // are left-associative.
        int la = prec - 1, ra = prec - 1;
        if (n.op == Op::Implies)
          ra = prec;
        else if (n.op != Op::Lt && n.op != Op::Le && n.op != Op::Eq)
          la = prec;
        out = print_expr(n.args[0], spec, la) + op_token(n.op) + print_expr(n.args[1], spec, ra);
      }
      break;
    }
    case SNode::Kind::Ite:
      out = "ite(" + print_expr(n.args[0], spec, 100) + ", " + print_expr(n.args[1], spec, 100) +
            ", " + print_expr(n.args[2], spec, 100) + ")";
      break;
  }
  return prec > allowance ? "(" + out + ")" : out;
}

}  // namespace

std::string print_spec(const Specification& spec) {
  std::ostringstream out;
  for (const auto& d : spec.streams) {
    switch (d.kind) {
      case StreamKind::Input:
        out << "input " << d.name << " : " << (d.sort == Sort::Bool ? "Bool" : "Real") << "\n";
        break;
      case StreamKind::Unconstrained:
        out << "unconstrained " << d.name << " : " << (d.sort == Sort::Bool ? "Bool" : "Real")
            << "\n";
        break;
      case StreamKind::Output:
        out << "output " << d.name << " := " << print_expr(*d.def, spec, 100) << "\n";
        break;
    }
  }
  for (const auto& a : spec.assumptions) out << "assumption " << print_expr(a, spec, 100) << "\n";
  return out.str();
}

// --- well-formedness ---------------------------------------------------------------

namespace {

void collect_zero_deps(const StreamExpr& e, std::set<uint32_t>& out) {
  const SNode& n = e.node();
  if (n.kind == SNode::Kind::Offset && n.offset == 0) out.insert(n.stream);
  for (const auto& a : n.args) collect_zero_deps(a, out);
}

}  // namespace

std::vector<uint32_t> check_well_formed(const Specification& spec) {
  const uint32_t n = static_cast<uint32_t>(spec.streams.size());
  // deps[i] = streams that stream i reads at offset 0 (outputs only matter).
  std::vector<std::set<uint32_t>> deps(n);
  std::vector<std::set<uint32_t>> rdeps(n);
  for (uint32_t i = 0; i < n; ++i) {
    if (spec.streams[i].kind != StreamKind::Output) continue;
    std::set<uint32_t> zs;
    collect_zero_deps(*spec.streams[i].def, zs);
    for (uint32_t s : zs) {
      if (spec.streams[s].kind != StreamKind::Output) continue;
      deps[i].insert(s);
      rdeps[s].insert(i);
    }
  }
  std::vector<size_t> pending(n, 0);
  std::set<uint32_t> ready;
  std::vector<bool> is_out(n, false);
  for (uint32_t i = 0; i < n; ++i) {
    if (spec.streams[i].kind != StreamKind::Output) continue;
    is_out[i] = true;
    pending[i] = deps[i].size();
    if (pending[i] == 0) ready.insert(i);
  }
  std::vector<uint32_t> order;
  while (!ready.empty()) {
    uint32_t i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(i);
    for (uint32_t j : rdeps[i])
      if (--pending[j] == 0) ready.insert(j);
  }
  size_t out_count = 0;
  for (uint32_t i = 0; i < n; ++i) out_count += is_out[i] ? 1 : 0;
  if (order.size() == out_count) return order;

  // A cycle remains: walk 0-offset edges among unresolved streams until a
  // stream repeats, then report the loop in walk order.
  std::vector<bool> placed(n, false);
  for (uint32_t i : order) placed[i] = true;
  uint32_t start = 0;
  for (uint32_t i = 0; i < n; ++i)
    if (is_out[i] && !placed[i]) {
      start = i;
      break;
    }
  std::vector<uint32_t> walk;
  std::map<uint32_t, size_t> seen;
  uint32_t cur = start;
  while (!seen.count(cur)) {
    seen[cur] = walk.size();
    walk.push_back(cur);
    uint32_t next = cur;
    for (uint32_t d : deps[cur])
      if (!placed[d]) {
        next = d;
        break;
      }
    cur = next;
  }
  std::string msg = "zero-offset cycle: ";
  for (size_t i = seen[cur]; i < walk.size(); ++i) msg += spec.streams[walk[i]].name + " -> ";
  msg += spec.streams[cur].name;
  throw SpecError(msg);
}

// --- flattening ------------------------------------------------------------------

namespace {

struct ChainKey {
  uint32_t stream;
  Value dflt;
  bool operator<(const ChainKey& o) const {
    if (stream != o.stream) return stream < o.stream;
    if (dflt.sort != o.dflt.sort) return dflt.sort == Sort::Bool;
    if (dflt.sort == Sort::Bool) return dflt.b < o.dflt.b;
    return dflt.r < o.dflt.r;
  }
};

struct Chain {
  int variant = 1;              // per-stream counter over distinct defaults
  std::vector<uint32_t> elems;  // delay stream indices, depth 1..
};

struct Flattener {
  Specification result;
  std::map<ChainKey, Chain> chains;
  std::map<uint32_t, int> variants_seen;  // distinct defaults encountered per stream

  bool name_taken(const std::string& s) const { return result.index_of(s).has_value(); }

  // Index of the depth-j delay stream of (stream, dflt), creating the chain
  // lazily.  Chain element j holds the value of the base stream j steps ago
  // (dflt before that); chains are per (stream, default) since the default is
  // baked into every link.  The first chain of a stream uses the documented
  // "_d<j>" names, later defaults append a variant tag.
  uint32_t delay(uint32_t stream, const Value& dflt, int64_t depth) {
    ChainKey key{stream, dflt};
    auto it = chains.find(key);
    if (it == chains.end()) {
      Chain c;
      c.variant = ++variants_seen[stream];
      it = chains.emplace(key, std::move(c)).first;
    }
    Chain& chain = it->second;
    while (static_cast<int64_t>(chain.elems.size()) < depth) {
      int64_t j = static_cast<int64_t>(chain.elems.size()) + 1;
      std::string name = result.streams[stream].name + "_d" + std::to_string(j);
      if (chain.variant > 1) name += "_" + std::to_string(chain.variant);
      while (name_taken(name)) name += "_";
      uint32_t prev = j == 1 ? stream : chain.elems.back();
      StreamDecl d;
      d.name = name;
      d.sort = result.streams[stream].sort;
      d.kind = StreamKind::Output;
      d.def = se_offset(prev, -1, dflt);
      d.synthetic = true;
      chain.elems.push_back(static_cast<uint32_t>(result.streams.size()));
      result.streams.push_back(std::move(d));
    }
    return chain.elems[depth - 1];
  }

  StreamExpr rewrite(const StreamExpr& e, const std::string& where) {
    const SNode& n = e.node();
    switch (n.kind) {
      case SNode::Kind::Const:
        return e;
      case SNode::Kind::Offset: {
        if (n.offset > 0)
          throw SpecError("future offset " + std::to_string(n.offset) + " on stream '" +
                          result.streams[n.stream].name + "' in " + where +
                          " is unsupported (past-only)");
        if (n.offset >= -1) return e;
        uint32_t d = delay(n.stream, *n.dflt, -n.offset - 1);
        return se_offset(d, -1, n.dflt);
      }
      case SNode::Kind::Fun: {
        std::vector<StreamExpr> args;
        args.reserve(n.args.size());
        for (const auto& a : n.args) args.push_back(rewrite(a, where));
        return se_fun(n.op, std::move(args));
      }
      case SNode::Kind::Ite:
        return se_ite(rewrite(n.args[0], where), rewrite(n.args[1], where),
                      rewrite(n.args[2], where));
    }
    throw InternalError("unreachable stream expression kind");
  }
};

}  // namespace

Specification flatten(const Specification& spec) {
  Flattener f;
  f.result = spec;
  for (size_t i = 0; i < spec.streams.size(); ++i) {
    if (!spec.streams[i].def) continue;
    f.result.streams[i].def =
        f.rewrite(*spec.streams[i].def, "definition of '" + spec.streams[i].name + "'");
  }
  for (size_t i = 0; i < spec.assumptions.size(); ++i) {
    f.result.assumptions[i] =
        f.rewrite(spec.assumptions[i], "assumption " + std::to_string(i + 1));
  }
  return f.result;
}

// --- fragment classification -------------------------------------------------------

namespace {

bool is_pure_bool(const StreamExpr& e, const Specification& spec) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval.sort == Sort::Bool;
    case SNode::Kind::Offset:
      return spec.streams[n.stream].sort == Sort::Bool;
    case SNode::Kind::Fun:
      if (n.op == Op::Lt || n.op == Op::Le || n.op == Op::Eq) return false;
      if (n.op == Op::Add || n.op == Op::Sub || n.op == Op::Neg || n.op == Op::Mul) return false;
      for (const auto& a : n.args)
        if (!is_pure_bool(a, spec)) return false;
      return true;
    case SNode::Kind::Ite:
      return is_pure_bool(n.args[0], spec) && is_pure_bool(n.args[1], spec) &&
             is_pure_bool(n.args[2], spec);
  }
  return false;
}

bool is_affine(const StreamExpr& e, const Specification& spec) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval.sort == Sort::Real;
    case SNode::Kind::Offset:
      return spec.streams[n.stream].sort == Sort::Real;
    case SNode::Kind::Fun:
      switch (n.op) {
        case Op::Add:
        case Op::Sub:
          return is_affine(n.args[0], spec) && is_affine(n.args[1], spec);
        case Op::Neg:
          return is_affine(n.args[0], spec);
        case Op::Mul:
          // scalar * stream only: one side must fold to a ground rational
          return (fold_const(n.args[0]) && is_affine(n.args[1], spec)) ||
                 (fold_const(n.args[1]) && is_affine(n.args[0], spec));
        default:
          return false;
      }
    case SNode::Kind::Ite:
      return false;
  }
  return false;
}

bool is_mixed_bool(const StreamExpr& e, const Specification& spec, bool allow_ite);

// Real expression that is affine except for ite leaves whose branches are again
// affine-with-ite.
bool is_affine_ite(const StreamExpr& e, const Specification& spec) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval.sort == Sort::Real;
    case SNode::Kind::Offset:
      return spec.streams[n.stream].sort == Sort::Real;
    case SNode::Kind::Fun:
      switch (n.op) {
        case Op::Add:
        case Op::Sub:
          return is_affine_ite(n.args[0], spec) && is_affine_ite(n.args[1], spec);
        case Op::Neg:
          return is_affine_ite(n.args[0], spec);
        case Op::Mul:
          return (fold_const(n.args[0]) && is_affine_ite(n.args[1], spec)) ||
                 (fold_const(n.args[1]) && is_affine_ite(n.args[0], spec));
        default:
          return false;
      }
    case SNode::Kind::Ite:
      return is_mixed_bool(n.args[0], spec, true) && is_affine_ite(n.args[1], spec) &&
             is_affine_ite(n.args[2], spec);
  }
  return false;
}

// Boolean combination whose atoms may be comparisons of affine Real expressions.
bool is_mixed_bool(const StreamExpr& e, const Specification& spec, bool allow_ite) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval.sort == Sort::Bool;
    case SNode::Kind::Offset:
      return spec.streams[n.stream].sort == Sort::Bool;
    case SNode::Kind::Fun:
      if (n.op == Op::Lt || n.op == Op::Le || n.op == Op::Eq) {
        auto ok = [&](const StreamExpr& x) {
          return allow_ite ? is_affine_ite(x, spec) : is_affine(x, spec);
        };
        return ok(n.args[0]) && ok(n.args[1]);
      }
      if (n.op == Op::Add || n.op == Op::Sub || n.op == Op::Neg || n.op == Op::Mul) return false;
      for (const auto& a : n.args)
        if (!is_mixed_bool(a, spec, allow_ite)) return false;
      return true;
    case SNode::Kind::Ite:
      return is_mixed_bool(n.args[0], spec, allow_ite) &&
             is_mixed_bool(n.args[1], spec, allow_ite) && is_mixed_bool(n.args[2], spec, allow_ite);
  }
  return false;
}

// 0 = within B or LA, 1 = needs the mixed fragment, 2 = needs ite over Reals,
// 3 = unsupported.
int expr_rank(const StreamExpr& e, const Specification& spec, Sort sort) {
  if (sort == Sort::Bool) {
    if (is_pure_bool(e, spec)) return 0;
    if (is_mixed_bool(e, spec, false)) return 1;
    if (is_mixed_bool(e, spec, true)) return 2;
    return 3;
  }
  if (is_affine(e, spec)) return 0;
  if (is_affine_ite(e, spec)) return 2;
  return 3;
}

}  // namespace

int fragment_rank(Fragment f) {
  switch (f) {
    case Fragment::B:
    case Fragment::LA:
      return 0;
    case Fragment::B_LA:
      return 1;
    case Fragment::B_LA_ite:
      return 2;
    case Fragment::Unsupported:
      return 3;
  }
  return 3;
}

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::B:
      return "B";
    case Fragment::LA:
      return "LA";
    case Fragment::B_LA:
      return "B/LA";
    case Fragment::B_LA_ite:
      return "B/LA+ite";
    case Fragment::Unsupported:
      return "unsupported";
  }
  return "?";
}

Fragment classify_fragment(const Specification& spec) {
  int rank = 0;
  bool any_bool_def = false, any_real_def = false;
  for (const auto& d : spec.streams) {
    if (!d.def) continue;
    rank = std::max(rank, expr_rank(*d.def, spec, d.sort));
    (d.sort == Sort::Bool ? any_bool_def : any_real_def) = true;
  }
  for (const auto& a : spec.assumptions) {
    int r = expr_rank(a, spec, Sort::Bool);
    rank = std::max(rank, r);
    if (r == 0) any_bool_def = true;  // a propositional assumption is B-flavored
  }
  switch (rank) {
    case 0:
      if (any_bool_def && any_real_def) return Fragment::B_LA;
      return any_real_def ? Fragment::LA : Fragment::B;
    case 1:
      return Fragment::B_LA;
    case 2:
      return Fragment::B_LA_ite;
    default:
      return Fragment::Unsupported;
  }
}

// --- ite elimination ------------------------------------------------------------

namespace {

struct IteRewriter {
  Specification result;
  std::vector<StreamExpr> new_assumptions;

  StreamExpr rewrite(const StreamExpr& e, const std::string& base, int& counter) {
    const SNode& n = e.node();
    switch (n.kind) {
      case SNode::Kind::Const:
      case SNode::Kind::Offset:
        return e;
      case SNode::Kind::Fun: {
        std::vector<StreamExpr> args;
        args.reserve(n.args.size());
        for (const auto& a : n.args) args.push_back(rewrite(a, base, counter));
        return se_fun(n.op, std::move(args));
      }
      case SNode::Kind::Ite: {
        StreamExpr c = rewrite(n.args[0], base, counter);
        StreamExpr t = rewrite(n.args[1], base, counter);
        StreamExpr el = rewrite(n.args[2], base, counter);
        if (sort_of(n.args[1], result) == Sort::Bool) {
          return se_fun(Op::Or, {se_fun(Op::And, {c, t}),
                                 se_fun(Op::And, {se_fun(Op::Not, {c}), el})});
        }
        // Real ite: introduce an unconstrained helper h pinned by the
        // assumption (c && h = t) || (!c && h = e).
        std::string name = base + "_ite" + std::to_string(++counter);
        while (result.index_of(name)) name += "_";
        StreamDecl d;
        d.name = name;
        d.sort = Sort::Real;
        d.kind = StreamKind::Unconstrained;
        d.synthetic = true;
        uint32_t idx = static_cast<uint32_t>(result.streams.size());
        result.streams.push_back(std::move(d));
        StreamExpr h = se_offset(idx, 0, std::nullopt);
        new_assumptions.push_back(
            se_fun(Op::Or, {se_fun(Op::And, {c, se_fun(Op::Eq, {h, t})}),
                            se_fun(Op::And, {se_fun(Op::Not, {c}), se_fun(Op::Eq, {h, el})})}));
        return h;
      }
    }
    throw InternalError("unreachable stream expression kind");
  }
};

}  // namespace

Specification rewrite_ite(const Specification& spec) {
  IteRewriter rw;
  rw.result = spec;
  for (size_t i = 0; i < spec.streams.size(); ++i) {
    if (!spec.streams[i].def) continue;
    int counter = 0;
    rw.result.streams[i].def = rw.rewrite(*spec.streams[i].def, spec.streams[i].name, counter);
  }
  for (size_t i = 0; i < spec.assumptions.size(); ++i) {
    int counter = 0;
    rw.result.assumptions[i] =
        rw.rewrite(spec.assumptions[i], "asm" + std::to_string(i + 1), counter);
  }
  for (auto& a : rw.new_assumptions) rw.result.assumptions.push_back(std::move(a));
  return rw.result;
}

}  // namespace lolasym

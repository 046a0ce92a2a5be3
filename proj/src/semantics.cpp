#include "lolasym/semantics.hpp"

#include <optional>

#include "lolasym/errors.hpp"

namespace lolasym {

Reading Reading::exact_of(Value v) {
  Reading r;
  r.kind = Kind::Exact;
  r.exact = std::move(v);
  return r;
}

Reading Reading::range(Rational lo, Rational hi) {
  Reading r;
  r.kind = Kind::Range;
  r.lo = std::move(lo);
  r.hi = std::move(hi);
  return r;
}

Reading Reading::unknown() { return Reading{}; }

bool operator==(const Reading& a, const Reading& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Reading::Kind::Exact:
      return a.exact == b.exact;
    case Reading::Kind::Range:
      return a.lo == b.lo && a.hi == b.hi;
    case Reading::Kind::Unknown:
      return true;
  }
  return false;
}

ConstraintSet encode_reading(const Specification& spec, uint32_t stream, int64_t t,
                             const Reading& r) {
  const StreamDecl& d = spec.streams[stream];
  ConstraintSet out;
  switch (r.kind) {
    case Reading::Kind::Unknown:
      return out;
    case Reading::Kind::Exact: {
      if (r.exact.sort != d.sort)
        throw SpecError("reading for stream '" + d.name + "' has the wrong sort");
      SymExpr v = sym_var(InstantVar::at(stream, t, d.sort));
      if (d.sort == Sort::Bool)
        out.add(r.exact.b ? v : sym_not(v));
      else
        out.add(sym_eq(v, sym_rat(r.exact.r)));
      return out;
    }
    case Reading::Kind::Range: {
      if (d.sort != Sort::Real)
        throw SpecError("range reading on Bool stream '" + d.name + "'");
      if (r.lo > r.hi)
        throw SpecError("invalid range [" + rat_to_string(r.lo) + "," + rat_to_string(r.hi) +
                        "] for stream '" + d.name + "'");
      SymExpr v = sym_var(InstantVar::at(stream, t, Sort::Real));
      out.add(sym_le(sym_rat(r.lo), v));
      out.add(sym_le(v, sym_rat(r.hi)));
      return out;
    }
  }
  return out;
}

SymExpr to_symexpr(const Specification& spec, const StreamExpr& e, int64_t t) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return n.cval.sort == Sort::Bool ? sym_bool(n.cval.b) : sym_rat(n.cval.r);
    case SNode::Kind::Offset: {
      int64_t u = t + n.offset;
      if (u < 0) return n.dflt->sort == Sort::Bool ? sym_bool(n.dflt->b) : sym_rat(n.dflt->r);
      return sym_var(InstantVar::at(n.stream, u, spec.streams[n.stream].sort));
    }
    case SNode::Kind::Fun: {
      switch (n.op) {
        case Op::Not:
          return sym_not(to_symexpr(spec, n.args[0], t));
        case Op::And:
          return sym_and({to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t)});
        case Op::Or:
          return sym_or({to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t)});
        case Op::Xor:
          return sym_xor({to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t)});
        case Op::Implies:
          return sym_implies(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t));
        case Op::Add:
          return sym_add(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t));
        case Op::Sub:
          return sym_sub(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t));
        case Op::Neg:
          return sym_neg(to_symexpr(spec, n.args[0], t));
        case Op::Mul: {
          // Affine fragment: one side must be ground.
          auto lc = fold_const(n.args[0]);
          if (lc && lc->sort == Sort::Real)
            return sym_scale(lc->r, to_symexpr(spec, n.args[1], t));
          auto rc = fold_const(n.args[1]);
          if (rc && rc->sort == Sort::Real)
            return sym_scale(rc->r, to_symexpr(spec, n.args[0], t));
          throw SpecError("nonlinear product of streams is outside the supported fragments");
        }
        case Op::Lt:
          return sym_lt(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t));
        case Op::Le:
          return sym_le(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t));
        case Op::Eq:
          return sym_eq(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t));
      }
      throw InternalError("unreachable operator");
    }
    case SNode::Kind::Ite: {
      require(sort_of(n.args[1], spec) == Sort::Bool,
              "Real ite must be rewritten away before symbolic instantiation");
      return sym_ite(to_symexpr(spec, n.args[0], t), to_symexpr(spec, n.args[1], t),
                     to_symexpr(spec, n.args[2], t));
    }
  }
  throw InternalError("unreachable stream expression kind");
}

ConstraintSet instantiate_step(const Specification& spec, int64_t t) {
  ConstraintSet out;
  for (uint32_t i = 0; i < spec.streams.size(); ++i) {
    const StreamDecl& d = spec.streams[i];
    if (!d.def) continue;
    SymExpr lhs = sym_var(InstantVar::at(i, t, d.sort));
    out.add(sym_eq(lhs, to_symexpr(spec, *d.def, t)));
  }
  return out;
}

ConstraintSet instantiate_assumptions(const Specification& spec, int64_t t) {
  ConstraintSet out;
  for (const auto& a : spec.assumptions) out.add(to_symexpr(spec, a, t));
  return out;
}

// --- concrete reference interpreter ------------------------------------------------

namespace {

struct Interp {
  const Specification& spec;
  int64_t len;
  // memo[stream][t]: computed value; in_flight guards against (ill-formed)
  // instantaneous recursion.
  std::vector<std::vector<std::optional<Value>>> memo;
  std::vector<std::vector<bool>> in_flight;

  Value value_of(uint32_t s, int64_t t) {
    auto& slot = memo[s][t];
    if (slot) return *slot;
    require(!in_flight[s][t], "instantaneous dependency cycle during evaluation");
    in_flight[s][t] = true;
    require(spec.streams[s].def.has_value(), "missing trace values for a non-output stream");
    Value v = eval(*spec.streams[s].def, t);
    in_flight[s][t] = false;
    slot = v;
    return v;
  }

  Value eval(const StreamExpr& e, int64_t t) {
    const SNode& n = e.node();
    switch (n.kind) {
      case SNode::Kind::Const:
        return n.cval;
      case SNode::Kind::Offset: {
        int64_t u = t + n.offset;
        if (u < 0 || u >= len) return *n.dflt;
        return value_of(n.stream, u);
      }
      case SNode::Kind::Fun: {
        switch (n.op) {
          case Op::Not:
            return Value::of_bool(!eval(n.args[0], t).b);
          case Op::And: {
            Value a = eval(n.args[0], t);
            return Value::of_bool(a.b && eval(n.args[1], t).b);
          }
          case Op::Or: {
            Value a = eval(n.args[0], t);
            return Value::of_bool(a.b || eval(n.args[1], t).b);
          }
          case Op::Xor:
            return Value::of_bool(eval(n.args[0], t).b != eval(n.args[1], t).b);
          case Op::Implies:
            return Value::of_bool(!eval(n.args[0], t).b || eval(n.args[1], t).b);
          case Op::Add:
            return Value::of_rat(eval(n.args[0], t).r + eval(n.args[1], t).r);
          case Op::Sub:
            return Value::of_rat(eval(n.args[0], t).r - eval(n.args[1], t).r);
          case Op::Neg:
            return Value::of_rat(-eval(n.args[0], t).r);
          case Op::Mul:
            return Value::of_rat(eval(n.args[0], t).r * eval(n.args[1], t).r);
          case Op::Lt:
            return Value::of_bool(eval(n.args[0], t).r < eval(n.args[1], t).r);
          case Op::Le:
            return Value::of_bool(eval(n.args[0], t).r <= eval(n.args[1], t).r);
          case Op::Eq:
            return Value::of_bool(eval(n.args[0], t).r == eval(n.args[1], t).r);
        }
        throw InternalError("unreachable operator");
      }
      case SNode::Kind::Ite:
        return eval(n.args[0], t).b ? eval(n.args[1], t) : eval(n.args[2], t);
    }
    throw InternalError("unreachable stream expression kind");
  }
};

}  // namespace

ConcreteTrace eval_concrete(const Specification& spec, const ConcreteTrace& in, int64_t len) {
  require(in.size() == spec.streams.size(), "trace row count must match stream count");
  Interp it{spec, len, {}, {}};
  it.memo.resize(spec.streams.size());
  it.in_flight.resize(spec.streams.size());
  for (uint32_t s = 0; s < spec.streams.size(); ++s) {
    it.memo[s].resize(len);
    it.in_flight[s].assign(len, false);
    if (!spec.streams[s].def) {
      require(static_cast<int64_t>(in[s].size()) == len,
              "missing trace values for a non-output stream");
      for (int64_t t = 0; t < len; ++t) it.memo[s][t] = in[s][t];
    }
  }
  ConcreteTrace out(spec.streams.size());
  for (uint32_t s = 0; s < spec.streams.size(); ++s) {
    out[s].reserve(len);
    for (int64_t t = 0; t < len; ++t) out[s].push_back(it.value_of(s, t));
  }
  return out;
}

VarNamer spec_namer(const Specification& spec) {
  std::vector<std::string> names;
  names.reserve(spec.streams.size());
  for (const auto& d : spec.streams) names.push_back(d.name);
  // var_name() appends the "^time" suffix; the namer supplies the bare name.
  return [names](const InstantVar& v) -> std::string {
    if (v.kind == InstantVar::Kind::StreamAt && v.stream < names.size()) return names[v.stream];
    return default_namer()(v);
  };
}

}  // namespace lolasym

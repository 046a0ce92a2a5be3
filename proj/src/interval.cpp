#include "lolasym/interval.hpp"

#include <algorithm>

#include "lolasym/errors.hpp"

namespace lolasym {

Bool3 not3(Bool3 a) {
  if (a == Bool3::Top) return Bool3::Top;
  return a == Bool3::True ? Bool3::False : Bool3::True;
}

Bool3 and3(Bool3 a, Bool3 b) {
  if (a == Bool3::False || b == Bool3::False) return Bool3::False;
  if (a == Bool3::True && b == Bool3::True) return Bool3::True;
  return Bool3::Top;
}

Bool3 or3(Bool3 a, Bool3 b) { return not3(and3(not3(a), not3(b))); }

Bool3 xor3(Bool3 a, Bool3 b) {
  if (a == Bool3::Top || b == Bool3::Top) return Bool3::Top;
  return (a == Bool3::True) != (b == Bool3::True) ? Bool3::True : Bool3::False;
}

namespace {

Interval iv_add(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo && b.lo) r.lo = *a.lo + *b.lo;
  if (a.hi && b.hi) r.hi = *a.hi + *b.hi;
  return r;
}

Interval iv_neg(const Interval& a) {
  Interval r;
  if (a.hi) r.lo = -*a.hi;
  if (a.lo) r.hi = -*a.lo;
  return r;
}

Interval iv_scale(const Rational& k, const Interval& a) {
  Interval r;
  if (k == 0) {
    r.lo = r.hi = Rational(0);
    return r;
  }
  if (k > 0) {
    if (a.lo) r.lo = k * *a.lo;
    if (a.hi) r.hi = k * *a.hi;
  } else {
    if (a.hi) r.lo = k * *a.hi;
    if (a.lo) r.hi = k * *a.lo;
  }
  return r;
}

Interval iv_join(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo && b.lo) r.lo = std::min(*a.lo, *b.lo);
  if (a.hi && b.hi) r.hi = std::max(*a.hi, *b.hi);
  return r;
}

Bool3 iv_lt(const Interval& a, const Interval& b) {
  if (a.hi && b.lo && *a.hi < *b.lo) return Bool3::True;
  if (a.lo && b.hi && *a.lo >= *b.hi) return Bool3::False;
  return Bool3::Top;
}

Bool3 iv_le(const Interval& a, const Interval& b) {
  if (a.hi && b.lo && *a.hi <= *b.lo) return Bool3::True;
  if (a.lo && b.hi && *a.lo > *b.hi) return Bool3::False;
  return Bool3::Top;
}

Bool3 iv_eq(const Interval& a, const Interval& b) {
  if (a.lo && a.hi && b.lo && b.hi && *a.lo == *a.hi && *b.lo == *b.hi)
    return *a.lo == *b.lo ? Bool3::True : Bool3::False;
  if ((a.hi && b.lo && *a.hi < *b.lo) || (a.lo && b.hi && *a.lo > *b.hi)) return Bool3::False;
  return Bool3::Top;
}

}  // namespace

AbsVal AbsVal::top(Sort s) {
  AbsVal v;
  v.sort = s;
  return v;
}

AbsVal AbsVal::of_value(const Value& val) {
  AbsVal v;
  v.sort = val.sort;
  if (val.sort == Sort::Bool) {
    v.b = val.b ? Bool3::True : Bool3::False;
  } else {
    v.iv.lo = v.iv.hi = val.r;
  }
  return v;
}

AbsVal AbsVal::of_bool3(Bool3 b) {
  AbsVal v;
  v.sort = Sort::Bool;
  v.b = b;
  return v;
}

AbsVal AbsVal::of_interval(Interval iv) {
  AbsVal v;
  v.sort = Sort::Real;
  v.iv = std::move(iv);
  return v;
}

bool AbsVal::determined() const {
  if (sort == Sort::Bool) return b != Bool3::Top;
  return iv.lo && iv.hi && *iv.lo == *iv.hi;
}

std::string abs_payload(const AbsVal& v) {
  if (v.sort == Sort::Bool) {
    if (v.b == Bool3::Top) return "?";
    return v.b == Bool3::True ? "tt" : "ff";
  }
  if (v.determined()) return rat_to_string(*v.iv.lo);
  std::string lo = v.iv.lo ? rat_to_string(*v.iv.lo) : "-inf";
  std::string hi = v.iv.hi ? rat_to_string(*v.iv.hi) : "inf";
  return "[" + lo + "," + hi + "]";
}

std::string abs_line(const Specification& spec, int64_t t, uint32_t stream, const AbsVal& v) {
  return std::to_string(t) + "\t" + spec.streams.at(stream).name + "\tabs\t" + abs_payload(v);
}

IntervalMonitor::IntervalMonitor(const Specification& spec) : spec_(spec) {
  order_ = check_well_formed(spec);

  // Collect per-instant range assumptions; anything else is ignored (warned).
  for (size_t k = 0; k < spec.assumptions.size(); ++k) {
    struct Atom {
      uint32_t stream;
      bool is_lower;
      Rational bound;
      bool is_eq;
    };
    std::vector<Atom> atoms;
    std::function<bool(const StreamExpr&)> scan = [&](const StreamExpr& e) -> bool {
      const SNode& n = e.node();
      if (n.kind == SNode::Kind::Fun && n.op == Op::And)
        return scan(n.args[0]) && scan(n.args[1]);
      if (n.kind != SNode::Kind::Fun ||
          (n.op != Op::Lt && n.op != Op::Le && n.op != Op::Eq))
        return false;
      const SNode& a = n.args[0].node();
      const SNode& b = n.args[1].node();
      auto now_ref = [](const SNode& x) {
        return x.kind == SNode::Kind::Offset && x.offset == 0;
      };
      if (now_ref(a)) {
        auto c = fold_const(n.args[1]);
        if (!c || c->sort != Sort::Real) return false;
        if (n.op == Op::Eq) {
          atoms.push_back({a.stream, true, c->r, true});
        } else {
          atoms.push_back({a.stream, false, c->r, false});  // s op c: upper bound
        }
        return true;
      }
      if (now_ref(b)) {
        auto c = fold_const(n.args[0]);
        if (!c || c->sort != Sort::Real) return false;
        if (n.op == Op::Eq) {
          atoms.push_back({b.stream, true, c->r, true});
        } else {
          atoms.push_back({b.stream, true, c->r, false});  // c op s: lower bound
        }
        return true;
      }
      return false;
    };
    if (!scan(spec.assumptions[k])) {
      warnings_.push_back("interval baseline ignores assumption #" + std::to_string(k + 1) +
                          " (not a per-instant range)");
      continue;
    }
    for (const auto& at : atoms) {
      RangeAsm& r = ranges_[at.stream];
      if (at.is_eq) {
        if (!r.lo || *r.lo < at.bound) r.lo = at.bound;
        if (!r.hi || *r.hi > at.bound) r.hi = at.bound;
      } else if (at.is_lower) {
        if (!r.lo || *r.lo < at.bound) r.lo = at.bound;
      } else {
        if (!r.hi || *r.hi > at.bound) r.hi = at.bound;
      }
    }
  }
}

AbsVal IntervalMonitor::eval(const StreamExpr& e) {
  const SNode& n = e.node();
  switch (n.kind) {
    case SNode::Kind::Const:
      return AbsVal::of_value(n.cval);
    case SNode::Kind::Offset: {
      if (n.offset == 0) return cur_.at(n.stream);
      require(n.offset == -1, "interval baseline requires a flattened specification");
      if (t_ == 0) {
        require(n.dflt.has_value(), "past offset without default");
        return AbsVal::of_value(*n.dflt);
      }
      return prev_.at(n.stream);
    }
    case SNode::Kind::Ite: {
      AbsVal c = eval(n.args[0]);
      if (c.b == Bool3::True) return eval(n.args[1]);
      if (c.b == Bool3::False) return eval(n.args[2]);
      AbsVal th = eval(n.args[1]);
      AbsVal el = eval(n.args[2]);
      if (th.sort == Sort::Bool)
        return AbsVal::of_bool3(th.b == el.b ? th.b : Bool3::Top);
      return AbsVal::of_interval(iv_join(th.iv, el.iv));
    }
    case SNode::Kind::Fun:
      break;
  }
  switch (n.op) {
    case Op::Not:
      return AbsVal::of_bool3(not3(eval(n.args[0]).b));
    case Op::And:
      return AbsVal::of_bool3(and3(eval(n.args[0]).b, eval(n.args[1]).b));
    case Op::Or:
      return AbsVal::of_bool3(or3(eval(n.args[0]).b, eval(n.args[1]).b));
    case Op::Xor:
      return AbsVal::of_bool3(xor3(eval(n.args[0]).b, eval(n.args[1]).b));
    case Op::Implies:
      return AbsVal::of_bool3(or3(not3(eval(n.args[0]).b), eval(n.args[1]).b));
    case Op::Add:
      return AbsVal::of_interval(iv_add(eval(n.args[0]).iv, eval(n.args[1]).iv));
    case Op::Sub:
      return AbsVal::of_interval(iv_add(eval(n.args[0]).iv, iv_neg(eval(n.args[1]).iv)));
    case Op::Neg:
      return AbsVal::of_interval(iv_neg(eval(n.args[0]).iv));
    case Op::Mul: {
      auto cl = fold_const(n.args[0]);
      if (cl && cl->sort == Sort::Real)
        return AbsVal::of_interval(iv_scale(cl->r, eval(n.args[1]).iv));
      auto cr = fold_const(n.args[1]);
      require(cr && cr->sort == Sort::Real, "nonlinear product of streams is unsupported");
      return AbsVal::of_interval(iv_scale(cr->r, eval(n.args[0]).iv));
    }
    case Op::Lt:
    case Op::Le:
    case Op::Eq: {
      AbsVal a = eval(n.args[0]);
      AbsVal b = eval(n.args[1]);
      if (a.sort == Sort::Bool) return AbsVal::of_bool3(not3(xor3(a.b, b.b)));
      if (n.op == Op::Lt) return AbsVal::of_bool3(iv_lt(a.iv, b.iv));
      if (n.op == Op::Le) return AbsVal::of_bool3(iv_le(a.iv, b.iv));
      return AbsVal::of_bool3(iv_eq(a.iv, b.iv));
    }
  }
  throw InternalError("unreachable stream operator");
}

std::vector<std::pair<uint32_t, AbsVal>> IntervalMonitor::step(
    const std::map<uint32_t, Reading>& readings) {
  cur_.assign(spec_.streams.size(), AbsVal());
  for (uint32_t s = 0; s < spec_.streams.size(); ++s) {
    const StreamDecl& d = spec_.streams[s];
    if (d.def) continue;
    AbsVal v = AbsVal::top(d.sort);
    auto it = readings.find(s);
    if (it != readings.end()) {
      if (d.kind != StreamKind::Input)
        throw SpecError("reading for non-input stream '" + d.name + "'");
      const Reading& r = it->second;
      if (r.kind == Reading::Kind::Exact) {
        if (r.exact.sort != d.sort)
          throw SpecError("reading sort mismatch on '" + d.name + "'");
        v = AbsVal::of_value(r.exact);
      } else if (r.kind == Reading::Kind::Range) {
        if (d.sort != Sort::Real)
          throw SpecError("range reading on Bool stream '" + d.name + "'");
        if (r.lo > r.hi) throw SpecError("empty range reading on '" + d.name + "'");
        Interval iv;
        iv.lo = r.lo;
        iv.hi = r.hi;
        v = AbsVal::of_interval(iv);
      }
    }
    auto ra = ranges_.find(s);
    if (ra != ranges_.end() && d.sort == Sort::Real) {
      if (ra->second.lo && (!v.iv.lo || *v.iv.lo < *ra->second.lo)) v.iv.lo = ra->second.lo;
      if (ra->second.hi && (!v.iv.hi || *v.iv.hi > *ra->second.hi)) v.iv.hi = ra->second.hi;
      if (v.iv.lo && v.iv.hi && *v.iv.lo > *v.iv.hi)
        throw SpecError("reading violates a range assumption on '" + d.name + "'");
    }
    cur_[s] = v;
  }
  for (uint32_t s : order_) cur_[s] = eval(*spec_.streams[s].def);

  std::vector<std::pair<uint32_t, AbsVal>> out;
  for (uint32_t s = 0; s < spec_.streams.size(); ++s)
    if (spec_.streams[s].def && !spec_.streams[s].synthetic) out.emplace_back(s, cur_[s]);
  prev_ = cur_;
  ++t_;
  return out;
}

}  // namespace lolasym

#include "lolasym/symexpr.hpp"

#include <algorithm>
#include <sstream>

namespace lolasym {

// --- InstantVar -------------------------------------------------------------

int compare(const InstantVar& a, const InstantVar& b) {
  if (a.kind != b.kind) return a.kind == InstantVar::Kind::StreamAt ? -1 : 1;
  if (a.kind == InstantVar::Kind::StreamAt) {
    if (a.time != b.time) return a.time < b.time ? -1 : 1;
    if (a.stream != b.stream) return a.stream < b.stream ? -1 : 1;
    return 0;
  }
  if (a.fresh_id != b.fresh_id) return a.fresh_id < b.fresh_id ? -1 : 1;
  return 0;
}

// --- AffineForm --------------------------------------------------------------

AffineForm AffineForm::of_const(Rational c) {
  AffineForm f;
  f.constant = std::move(c);
  return f;
}

AffineForm AffineForm::of_var(InstantVar v) {
  require(v.sort == Sort::Real, "affine term over a Bool variable");
  AffineForm f;
  f.terms.emplace_back(v, Rational(1));
  return f;
}

AffineForm aff_add(const AffineForm& a, const AffineForm& b) {
  AffineForm r;
  r.constant = a.constant + b.constant;
  size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
      r.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
      r.terms.push_back(b.terms[j++]);
    } else {
      Rational c = a.terms[i].second + b.terms[j].second;
      if (c != 0) r.terms.emplace_back(a.terms[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

AffineForm aff_neg(const AffineForm& a) { return aff_scale(Rational(-1), a); }

AffineForm aff_sub(const AffineForm& a, const AffineForm& b) { return aff_add(a, aff_neg(b)); }

AffineForm aff_scale(const Rational& k, const AffineForm& a) {
  AffineForm r;
  if (k == 0) return r;
  r.constant = k * a.constant;
  r.terms.reserve(a.terms.size());
  for (const auto& [v, c] : a.terms) r.terms.emplace_back(v, k * c);
  return r;
}

int compare(const AffineForm& a, const AffineForm& b) {
  size_t n = std::min(a.terms.size(), b.terms.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.terms[i].first, b.terms[i].first);
    if (c != 0) return c;
    int d = cmp(a.terms[i].second, b.terms[i].second);
    if (d != 0) return d;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size() ? -1 : 1;
  return cmp(a.constant, b.constant);
}

Rational aff_coeff(const AffineForm& a, const InstantVar& v) {
  for (const auto& [w, c] : a.terms)
    if (w == v) return c;
  return Rational(0);
}

// --- constructors ------------------------------------------------------------

namespace {

SymExpr make(Node n) { return SymExpr(std::make_shared<const Node>(std::move(n))); }

int kind_rank(NodeKind k) { return static_cast<int>(k); }

}  // namespace

NodeKind SymExpr::kind() const { return p_->kind; }

Sort SymExpr::sort() const { return p_->kind == NodeKind::Affine ? Sort::Real : Sort::Bool; }

SymExpr sym_bool(bool b) {
  Node n;
  n.kind = NodeKind::BoolConst;
  n.bval = b;
  return make(std::move(n));
}

SymExpr sym_rat(const Rational& q) { return sym_affine(AffineForm::of_const(q)); }

SymExpr sym_var(const InstantVar& v) {
  if (v.sort == Sort::Real) return sym_affine(AffineForm::of_var(v));
  Node n;
  n.kind = NodeKind::BoolVar;
  n.var = v;
  return make(std::move(n));
}

SymExpr sym_affine(AffineForm a) {
  Node n;
  n.kind = NodeKind::Affine;
  n.aff = std::move(a);
  return make(std::move(n));
}

SymExpr sym_not(const SymExpr& e) {
  require(e.sort() == Sort::Bool, "not over a Real expression");
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return sym_bool(!n.bval);
    case NodeKind::Not:
      return n.kids[0];
    case NodeKind::Cmp:
      // !(a <= 0) == -a < 0 ; !(a < 0) == -a <= 0. Negated equations are
      // non-convex and stay wrapped.
      if (n.op == CmpOp::Le) return sym_cmp(CmpOp::Lt, aff_neg(n.aff));
      if (n.op == CmpOp::Lt) return sym_cmp(CmpOp::Le, aff_neg(n.aff));
      break;
    default:
      break;
  }
  Node r;
  r.kind = NodeKind::Not;
  r.kids = {e};
  return make(std::move(r));
}

namespace {

// Shared flatten/sort/dedup machinery for the n-ary connectives.
void flatten_into(NodeKind k, const SymExpr& e, std::vector<SymExpr>& out) {
  if (e.kind() == k) {
    for (const auto& kid : e.node().kids) flatten_into(k, kid, out);
  } else {
    out.push_back(e);
  }
}

}  // namespace

SymExpr sym_and(std::vector<SymExpr> kids) {
  std::vector<SymExpr> flat;
  for (const auto& k : kids) {
    require(k.sort() == Sort::Bool, "and over a Real expression");
    flatten_into(NodeKind::And, k, flat);
  }
  std::vector<SymExpr> keep;
  for (const auto& k : flat) {
    if (k.kind() == NodeKind::BoolConst) {
      if (!k.node().bval) return sym_bool(false);
      continue;  // neutral element
    }
    keep.push_back(k);
  }
  std::sort(keep.begin(), keep.end(), [](const SymExpr& a, const SymExpr& b) { return a < b; });
  keep.erase(std::unique(keep.begin(), keep.end(),
                         [](const SymExpr& a, const SymExpr& b) { return a == b; }),
             keep.end());
  for (const auto& k : keep) {
    SymExpr neg = sym_not(k);
    if (std::binary_search(keep.begin(), keep.end(), neg,
                           [](const SymExpr& a, const SymExpr& b) { return a < b; }))
      return sym_bool(false);
  }
  if (keep.empty()) return sym_bool(true);
  if (keep.size() == 1) return keep[0];
  Node n;
  n.kind = NodeKind::And;
  n.kids = std::move(keep);
  return make(std::move(n));
}

SymExpr sym_or(std::vector<SymExpr> kids) {
  std::vector<SymExpr> flat;
  for (const auto& k : kids) {
    require(k.sort() == Sort::Bool, "or over a Real expression");
    flatten_into(NodeKind::Or, k, flat);
  }
  std::vector<SymExpr> keep;
  for (const auto& k : flat) {
    if (k.kind() == NodeKind::BoolConst) {
      if (k.node().bval) return sym_bool(true);
      continue;
    }
    keep.push_back(k);
  }
  std::sort(keep.begin(), keep.end(), [](const SymExpr& a, const SymExpr& b) { return a < b; });
  keep.erase(std::unique(keep.begin(), keep.end(),
                         [](const SymExpr& a, const SymExpr& b) { return a == b; }),
             keep.end());
  for (const auto& k : keep) {
    SymExpr neg = sym_not(k);
    if (std::binary_search(keep.begin(), keep.end(), neg,
                           [](const SymExpr& a, const SymExpr& b) { return a < b; }))
      return sym_bool(true);
  }
  if (keep.empty()) return sym_bool(false);
  if (keep.size() == 1) return keep[0];
  Node n;
  n.kind = NodeKind::Or;
  n.kids = std::move(keep);
  return make(std::move(n));
}

namespace {

// Peels constants, negations and nested xors off a xor operand, accumulating
// their contribution as a parity bit.  Equal operands then cancel in pairs,
// which is what turns (x0 ^ x1) ^ (!x0 ^ x1) into tt.
void xor_collect(const SymExpr& e, bool& parity, std::vector<SymExpr>& out) {
  if (e.kind() == NodeKind::BoolConst) {
    parity ^= e.node().bval;
  } else if (e.kind() == NodeKind::Not) {
    parity = !parity;
    xor_collect(e.node().kids[0], parity, out);
  } else if (e.kind() == NodeKind::Xor) {
    for (const auto& k : e.node().kids) xor_collect(k, parity, out);
  } else {
    out.push_back(e);
  }
}

}  // namespace

SymExpr sym_xor(std::vector<SymExpr> kids) {
  bool parity = false;
  std::vector<SymExpr> ops;
  for (const auto& k : kids) {
    require(k.sort() == Sort::Bool, "xor over a Real expression");
    xor_collect(k, parity, ops);
  }
  std::sort(ops.begin(), ops.end(), [](const SymExpr& a, const SymExpr& b) { return a < b; });
  std::vector<SymExpr> keep;
  for (size_t i = 0; i < ops.size();) {
    size_t j = i;
    while (j < ops.size() && ops[j] == ops[i]) ++j;
    if ((j - i) % 2 == 1) keep.push_back(ops[i]);
    i = j;
  }
  SymExpr base;
  if (keep.empty())
    base = sym_bool(false);
  else if (keep.size() == 1)
    base = keep[0];
  else {
    Node n;
    n.kind = NodeKind::Xor;
    n.kids = std::move(keep);
    base = make(std::move(n));
  }
  return parity ? sym_not(base) : base;
}

SymExpr sym_implies(const SymExpr& a, const SymExpr& b) { return sym_or({sym_not(a), b}); }

SymExpr sym_iff(const SymExpr& a, const SymExpr& b) { return sym_not(sym_xor({a, b})); }

SymExpr sym_cmp(CmpOp op, AffineForm a) {
  if (a.is_constant()) {
    int s = sgn(a.constant);
    switch (op) {
      case CmpOp::Lt:
        return sym_bool(s < 0);
      case CmpOp::Le:
        return sym_bool(s <= 0);
      case CmpOp::Eq:
        return sym_bool(s == 0);
    }
  }
  // Normalize scale so structurally equal means semantically equal:
  // equations get leading coefficient +1, inequalities leading |coeff| 1.
  Rational lead = a.terms[0].second;
  if (op == CmpOp::Eq) {
    a = aff_scale(Rational(1) / lead, a);
  } else {
    Rational mag = lead < 0 ? -lead : lead;
    if (mag != 1) a = aff_scale(Rational(1) / mag, a);
  }
  Node n;
  n.kind = NodeKind::Cmp;
  n.op = op;
  n.aff = std::move(a);
  return make(std::move(n));
}

SymExpr sym_eq(const SymExpr& a, const SymExpr& b) {
  if (a.sort() == Sort::Bool && b.sort() == Sort::Bool) return sym_iff(a, b);
  require(a.sort() == Sort::Real && b.sort() == Sort::Real, "equality over mixed sorts");
  return sym_cmp(CmpOp::Eq, aff_sub(a.node().aff, b.node().aff));
}

SymExpr sym_lt(const SymExpr& a, const SymExpr& b) {
  require(a.sort() == Sort::Real && b.sort() == Sort::Real, "comparison over Bool expression");
  return sym_cmp(CmpOp::Lt, aff_sub(a.node().aff, b.node().aff));
}

SymExpr sym_le(const SymExpr& a, const SymExpr& b) {
  require(a.sort() == Sort::Real && b.sort() == Sort::Real, "comparison over Bool expression");
  return sym_cmp(CmpOp::Le, aff_sub(a.node().aff, b.node().aff));
}

SymExpr sym_add(const SymExpr& a, const SymExpr& b) {
  require(a.sort() == Sort::Real && b.sort() == Sort::Real, "arithmetic over Bool expression");
  return sym_affine(aff_add(a.node().aff, b.node().aff));
}

SymExpr sym_sub(const SymExpr& a, const SymExpr& b) {
  require(a.sort() == Sort::Real && b.sort() == Sort::Real, "arithmetic over Bool expression");
  return sym_affine(aff_sub(a.node().aff, b.node().aff));
}

SymExpr sym_neg(const SymExpr& a) {
  require(a.sort() == Sort::Real, "negation of a Bool expression");
  return sym_affine(aff_neg(a.node().aff));
}

SymExpr sym_scale(const Rational& k, const SymExpr& a) {
  require(a.sort() == Sort::Real, "scaling a Bool expression");
  return sym_affine(aff_scale(k, a.node().aff));
}

SymExpr sym_ite(const SymExpr& c, const SymExpr& t, const SymExpr& e) {
  require(c.sort() == Sort::Bool, "ite condition must be Bool");
  require(t.sort() == Sort::Bool && e.sort() == Sort::Bool,
          "Real ite reached the symbolic layer; rewrite_ite must run first");
  if (c.kind() == NodeKind::BoolConst) return c.node().bval ? t : e;
  if (t == e) return t;
  if (is_true(t) && is_false(e)) return c;
  if (is_false(t) && is_true(e)) return sym_not(c);
  if (c.kind() == NodeKind::Not) return sym_ite(c.node().kids[0], e, t);
  Node n;
  n.kind = NodeKind::BoolIte;
  n.kids = {c, t, e};
  return make(std::move(n));
}

// --- comparisons, predicates -------------------------------------------------

int compare(const SymExpr& a, const SymExpr& b) {
  const Node& x = a.node();
  const Node& y = b.node();
  if (x.kind != y.kind) return kind_rank(x.kind) < kind_rank(y.kind) ? -1 : 1;
  switch (x.kind) {
    case NodeKind::BoolConst:
      if (x.bval != y.bval) return x.bval ? 1 : -1;
      return 0;
    case NodeKind::BoolVar:
      return compare(x.var, y.var);
    case NodeKind::Cmp:
      if (x.op != y.op) return static_cast<int>(x.op) < static_cast<int>(y.op) ? -1 : 1;
      return compare(x.aff, y.aff);
    case NodeKind::Affine:
      return compare(x.aff, y.aff);
    default: {
      if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
      for (size_t i = 0; i < x.kids.size(); ++i) {
        int c = compare(x.kids[i], y.kids[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
}

bool is_true(const SymExpr& e) { return e.kind() == NodeKind::BoolConst && e.node().bval; }
bool is_false(const SymExpr& e) { return e.kind() == NodeKind::BoolConst && !e.node().bval; }

static size_t aff_measure(const AffineForm& f) {
  if (f.terms.empty()) return 1;
  size_t m = f.constant != 0 ? 1 : 0;
  for (const auto& [v, c] : f.terms) {
    (void)v;
    m += 1;
    if (c != 1 && c != -1) m += 1;
  }
  return m;
}

size_t measure(const SymExpr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
    case NodeKind::BoolVar:
      return 1;
    case NodeKind::Cmp:
    case NodeKind::Affine:
      return aff_measure(n.aff);
    default: {
      size_t m = 0;
      for (const auto& k : n.kids) m += measure(k);
      return m;
    }
  }
}

void collect_vars(const SymExpr& e, std::set<InstantVar>& out) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return;
    case NodeKind::BoolVar:
      out.insert(n.var);
      return;
    case NodeKind::Cmp:
    case NodeKind::Affine:
      for (const auto& [v, c] : n.aff.terms) {
        (void)c;
        out.insert(v);
      }
      return;
    default:
      for (const auto& k : n.kids) collect_vars(k, out);
  }
}

namespace {

AffineForm subst_affine(const AffineForm& f, const std::map<InstantVar, SymExpr>& binding) {
  AffineForm r = AffineForm::of_const(f.constant);
  for (const auto& [v, c] : f.terms) {
    auto it = binding.find(v);
    if (it == binding.end()) {
      AffineForm t;
      t.terms.emplace_back(v, c);
      r = aff_add(r, t);
    } else {
      require(it->second.sort() == Sort::Real, "Real variable bound to Bool expression");
      r = aff_add(r, aff_scale(c, it->second.node().aff));
    }
  }
  return r;
}

}  // namespace

SymExpr substitute(const SymExpr& e, const std::map<InstantVar, SymExpr>& binding) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return e;
    case NodeKind::BoolVar: {
      auto it = binding.find(n.var);
      if (it == binding.end()) return e;
      require(it->second.sort() == Sort::Bool, "Bool variable bound to Real expression");
      return it->second;
    }
    case NodeKind::Not:
      return sym_not(substitute(n.kids[0], binding));
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      std::vector<SymExpr> kids;
      kids.reserve(n.kids.size());
      for (const auto& k : n.kids) kids.push_back(substitute(k, binding));
      if (n.kind == NodeKind::And) return sym_and(std::move(kids));
      if (n.kind == NodeKind::Or) return sym_or(std::move(kids));
      return sym_xor(std::move(kids));
    }
    case NodeKind::BoolIte:
      return sym_ite(substitute(n.kids[0], binding), substitute(n.kids[1], binding),
                     substitute(n.kids[2], binding));
    case NodeKind::Cmp:
      return sym_cmp(n.op, subst_affine(n.aff, binding));
    case NodeKind::Affine:
      return sym_affine(subst_affine(n.aff, binding));
  }
  throw InternalError("unreachable expression kind");
}

SymExpr simplify(const SymExpr& e) { return substitute(e, {}); }

std::optional<bool> eval_bool(const SymExpr& e, const Assignment& a) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return n.bval;
    case NodeKind::BoolVar: {
      auto it = a.bools.find(n.var);
      if (it == a.bools.end()) return std::nullopt;
      return it->second;
    }
    case NodeKind::Not: {
      auto v = eval_bool(n.kids[0], a);
      if (!v) return std::nullopt;
      return !*v;
    }
    case NodeKind::And: {
      bool unknown = false;
      for (const auto& k : n.kids) {
        auto v = eval_bool(k, a);
        if (!v)
          unknown = true;
        else if (!*v)
          return false;
      }
      if (unknown) return std::nullopt;
      return true;
    }
    case NodeKind::Or: {
      bool unknown = false;
      for (const auto& k : n.kids) {
        auto v = eval_bool(k, a);
        if (!v)
          unknown = true;
        else if (*v)
          return true;
      }
      if (unknown) return std::nullopt;
      return false;
    }
    case NodeKind::Xor: {
      bool acc = false;
      for (const auto& k : n.kids) {
        auto v = eval_bool(k, a);
        if (!v) return std::nullopt;
        acc ^= *v;
      }
      return acc;
    }
    case NodeKind::BoolIte: {
      auto c = eval_bool(n.kids[0], a);
      if (!c) {
        auto t = eval_bool(n.kids[1], a);
        auto e2 = eval_bool(n.kids[2], a);
        if (t && e2 && *t == *e2) return *t;
        return std::nullopt;
      }
      return eval_bool(*c ? n.kids[1] : n.kids[2], a);
    }
    case NodeKind::Cmp: {
      auto v = eval_affine(n.aff, a);
      if (!v) return std::nullopt;
      switch (n.op) {
        case CmpOp::Lt:
          return *v < 0;
        case CmpOp::Le:
          return *v <= 0;
        case CmpOp::Eq:
          return *v == 0;
      }
      return std::nullopt;
    }
    case NodeKind::Affine:
      throw InternalError("eval_bool over a Real expression");
  }
  throw InternalError("unreachable expression kind");
}

std::optional<Rational> eval_affine(const AffineForm& f, const Assignment& a) {
  Rational acc = f.constant;
  for (const auto& [v, c] : f.terms) {
    auto it = a.reals.find(v);
    if (it == a.reals.end()) return std::nullopt;
    acc += c * it->second;
  }
  return acc;
}

// --- printing ----------------------------------------------------------------

VarNamer default_namer() {
  return [](const InstantVar& v) { return "s" + std::to_string(v.stream); };
}

std::string var_name(const InstantVar& v, const VarNamer& namer) {
  if (v.kind == InstantVar::Kind::Fresh) return "$" + std::to_string(v.fresh_id);
  return namer(v) + "^" + std::to_string(v.time);
}

namespace {

std::string term_str(const InstantVar& v, const Rational& c, const VarNamer& namer) {
  Rational mag = c < 0 ? Rational(-c) : c;
  std::string name = var_name(v, namer);
  if (mag == 1) return name;
  return rat_to_string(mag) + "*" + name;
}

// Renders terms + constant with signs, e.g. "24 + ld^0 - 2*ld^3".
std::string side_str(const std::vector<std::pair<InstantVar, Rational>>& terms,
                     const Rational& constant, const VarNamer& namer) {
  std::string out;
  bool first = true;
  if (constant != 0) {
    out += rat_to_string(constant);
    first = false;
  }
  for (const auto& [v, c] : terms) {
    if (first) {
      out += (c < 0 ? "-" : "") + term_str(v, c, namer);
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ") + term_str(v, c, namer);
    }
  }
  if (first) out = "0";
  return out;
}

// Precedence levels, tighter binds lower: atom=0, not=1, cmp=2, and=3, xor=4, or=5.
int prec_of(const SymExpr& e) {
  switch (e.kind()) {
    case NodeKind::Not:
      return 1;
    case NodeKind::Cmp:
      return 2;
    case NodeKind::And:
      return 3;
    case NodeKind::Xor:
      return 4;
    case NodeKind::Or:
      return 5;
    default:
      return 0;
  }
}

std::string print_expr(const SymExpr& e, const VarNamer& namer, int parent_prec) {
  const Node& n = e.node();
  std::string out;
  int prec = prec_of(e);
  switch (n.kind) {
    case NodeKind::BoolConst:
      out = n.bval ? "tt" : "ff";
      break;
    case NodeKind::BoolVar:
      out = var_name(n.var, namer);
      break;
    case NodeKind::Not:
      out = "!" + print_expr(n.kids[0], namer, 1);
      break;
    case NodeKind::And:
    case NodeKind::Or:
    case NodeKind::Xor: {
      const char* sep = n.kind == NodeKind::And ? " && " : n.kind == NodeKind::Or ? " || " : " ^ ";
      for (size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += sep;
        out += print_expr(n.kids[i], namer, prec);
      }
      break;
    }
    case NodeKind::BoolIte:
      out = "ite(" + print_expr(n.kids[0], namer, 9) + ", " + print_expr(n.kids[1], namer, 9) +
            ", " + print_expr(n.kids[2], namer, 9) + ")";
      break;
    case NodeKind::Cmp: {
      // Split by sign so `acc - 15 <= 0` reads `acc <= 15`.
      std::vector<std::pair<InstantVar, Rational>> lhs, rhs;
      for (const auto& [v, c] : n.aff.terms) {
        if (c > 0)
          lhs.emplace_back(v, c);
        else
          rhs.emplace_back(v, Rational(-c));
      }
      Rational lc = n.aff.constant > 0 ? n.aff.constant : Rational(0);
      Rational rc = n.aff.constant < 0 ? Rational(-n.aff.constant) : Rational(0);
      const char* op = n.op == CmpOp::Lt ? " < " : n.op == CmpOp::Le ? " <= " : " = ";
      out = side_str(lhs, lc, namer) + op + side_str(rhs, rc, namer);
      break;
    }
    case NodeKind::Affine:
      out = side_str(n.aff.terms, n.aff.constant, namer);
      break;
  }
  return prec > parent_prec ? "(" + out + ")" : out;
}

}  // namespace

std::string to_string(const SymExpr& e, const VarNamer& namer) {
  return print_expr(e, namer, 100);
}

std::string to_string(const AffineForm& f, const VarNamer& namer) {
  return side_str(f.terms, f.constant, namer);
}

// --- constraint sets -----------------------------------------------------------

void ConstraintSet::add(const SymExpr& e) {
  require(e.sort() == Sort::Bool, "constraint must be Bool-sorted");
  if (is_true(e)) return;
  auto it = std::lower_bound(items_.begin(), items_.end(), e,
                             [](const SymExpr& a, const SymExpr& b) { return a < b; });
  if (it != items_.end() && *it == e) return;
  items_.insert(it, e);
}

void ConstraintSet::add_all(const ConstraintSet& other) {
  for (const auto& e : other.items_) add(e);
}

bool ConstraintSet::contains(const SymExpr& e) const {
  return std::binary_search(items_.begin(), items_.end(), e,
                            [](const SymExpr& a, const SymExpr& b) { return a < b; });
}

bool ConstraintSet::contains_false() const {
  for (const auto& e : items_)
    if (is_false(e)) return true;
  return false;
}

size_t measure(const ConstraintSet& c) {
  size_t m = 0;
  for (const auto& e : c) m += measure(e);
  return m;
}

std::set<InstantVar> vars_of(const ConstraintSet& c) {
  std::set<InstantVar> out;
  for (const auto& e : c) collect_vars(e, out);
  return out;
}

std::string to_string(const ConstraintSet& c, const VarNamer& namer) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : c) {
    if (!first) out += ", ";
    out += to_string(e, namer);
    first = false;
  }
  return out + "}";
}

}  // namespace lolasym

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <optional>
#include <variant>

#include "lolasym/errors.hpp"
#include "lolasym/rational.hpp"
#include "lolasym/rng.hpp"
#include "lolasym/symexpr.hpp"

using namespace lolasym;

namespace {

// Distinct stream indices throughout: a variable's identity is (stream, time),
// with the sort determined by the stream.
const InstantVar X = InstantVar::at(0, 0, Sort::Real);
const InstantVar Y = InstantVar::at(1, 0, Sort::Real);
const InstantVar P = InstantVar::at(2, 0, Sort::Bool);
const InstantVar Q = InstantVar::at(3, 0, Sort::Bool);
const InstantVar R2 = InstantVar::at(4, 0, Sort::Bool);

SymExpr rv(const InstantVar& v) { return sym_var(v); }

// Independent recursive evaluator used to check that construction-time
// rewriting never changes meaning.  Total under a full assignment.
using OVal = std::variant<bool, Rational>;

OVal oeval(const SymExpr& e, const Assignment& a) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::BoolConst:
      return n.bval;
    case NodeKind::BoolVar:
      return a.bools.at(n.var);
    case NodeKind::Not:
      return !std::get<bool>(oeval(n.kids[0], a));
    case NodeKind::And: {
      for (const auto& k : n.kids)
        if (!std::get<bool>(oeval(k, a))) return false;
      return true;
    }
    case NodeKind::Or: {
      for (const auto& k : n.kids)
        if (std::get<bool>(oeval(k, a))) return true;
      return false;
    }
    case NodeKind::Xor: {
      bool v = false;
      for (const auto& k : n.kids) v ^= std::get<bool>(oeval(k, a));
      return v;
    }
    case NodeKind::BoolIte:
      return std::get<bool>(oeval(n.kids[0], a)) ? oeval(n.kids[1], a) : oeval(n.kids[2], a);
    case NodeKind::Cmp: {
      Rational s = n.aff.constant;
      for (const auto& [v, c] : n.aff.terms) s += c * a.reals.at(v);
      switch (n.op) {
        case CmpOp::Lt:
          return s < 0;
        case CmpOp::Le:
          return s <= 0;
        case CmpOp::Eq:
          return s == 0;
      }
      return false;
    }
    case NodeKind::Affine: {
      Rational s = n.aff.constant;
      for (const auto& [v, c] : n.aff.terms) s += c * a.reals.at(v);
      return s;
    }
  }
  throw std::logic_error("bad node");
}

// Random Bool expression over {P,Q,R2} and atoms over {X,Y}; mirrors what the
// engine builds while instantiating stream equations.
SymExpr gen_expr(SplitMix64& rng, size_t depth) {
  if (depth == 0) {
    switch (rng.below(4)) {
      case 0:
        return sym_bool(rng.chance(1, 2));
      case 1:
        return rv(P);
      case 2:
        return rv(Q);
      default: {
        AffineForm f = AffineForm::of_var(rng.chance(1, 2) ? X : Y);
        f = aff_add(f, AffineForm::of_const(Rational(static_cast<long>(rng.below(5)) - 2)));
        if (rng.chance(1, 3)) f = aff_scale(Rational(2), f);
        CmpOp op = rng.below(3) == 0 ? CmpOp::Lt : (rng.below(2) ? CmpOp::Le : CmpOp::Eq);
        return sym_cmp(op, f);
      }
    }
  }
  switch (rng.below(6)) {
    case 0:
      return sym_not(gen_expr(rng, depth - 1));
    case 1:
      return sym_and({gen_expr(rng, depth - 1), gen_expr(rng, depth - 1)});
    case 2:
      return sym_or({gen_expr(rng, depth - 1), gen_expr(rng, depth - 1)});
    case 3:
      return sym_xor({gen_expr(rng, depth - 1), gen_expr(rng, depth - 1)});
    case 4:
      return sym_implies(gen_expr(rng, depth - 1), gen_expr(rng, depth - 1));
    default:
      return sym_iff(gen_expr(rng, depth - 1), gen_expr(rng, depth - 1));
  }
}

Assignment random_assignment(SplitMix64& rng) {
  Assignment a;
  for (const auto& v : {P, Q, R2}) a.bools[v] = rng.chance(1, 2);
  for (const auto& v : {X, Y}) a.reals[v] = Rational(static_cast<long>(rng.below(9)) - 4);
  return a;
}

}  // namespace

TEST_CASE("rational parsing accepts the documented literal forms") {
  auto eq = [](const char* s, Rational want) {
    auto got = parse_rational(s);
    REQUIRE(got.has_value());
    CHECK(*got == want);
  };
  eq("12", Rational(12));
  eq("+3", Rational(3));
  eq("-3", Rational(-3));
  eq("0.25", rat_frac(1, 4));
  eq("-1.5", rat_frac(-3, 2));
  eq(".5", rat_frac(1, 2));
  eq("2.", Rational(2));
  eq("7/2", rat_frac(7, 2));
  eq("6/4", rat_frac(3, 2));  // canonicalized
  eq("-0.01", rat_frac(-1, 100));
}

TEST_CASE("rational parsing rejects malformed text") {
  for (const char* s : {"", "-", "1.2.3", "2e3", "--2", "1/0", "3/-2", "a", "1 2", "/2"})
    CHECK_FALSE(parse_rational(s).has_value());
}

TEST_CASE("rational rendering: bare integers, p/q, exact decimals") {
  CHECK(rat_to_string(Rational(5)) == "5");
  CHECK(rat_to_string(Rational(-3)) == "-3");
  CHECK(rat_to_string(rat_frac(3, 2)) == "3/2");
  CHECK(rat_to_cell(rat_frac(1, 4)) == "0.25");
  CHECK(rat_to_cell(rat_frac(-3, 2)) == "-1.5");
  CHECK(rat_to_cell(Rational(7)) == "7");
  CHECK(rat_to_cell(rat_frac(1, 3)) == "1/3");  // no finite decimal form
  CHECK(rat_to_cell(rat_frac(11, 5)) == "2.2");
  CHECK(rat_to_cell(rat_frac(1, 8)) == "0.125");
  CHECK(rat_to_cell(rat_frac(1, 20)) == "0.05");
  CHECK(rat_to_cell(rat_frac(-1, 100)) == "-0.01");
}

TEST_CASE("round-trip: every rendered rational parses back to itself") {
  SplitMix64 rng(11);
  for (int i = 0; i < 500; ++i) {
    long num = static_cast<long>(rng.below(2001)) - 1000;
    long den = static_cast<long>(rng.below(64)) + 1;
    Rational q = rat_frac(num, den);
    auto back1 = parse_rational(rat_to_string(q));
    auto back2 = parse_rational(rat_to_cell(q));
    REQUIRE(back1.has_value());
    REQUIRE(back2.has_value());
    CHECK(*back1 == q);
    CHECK(*back2 == q);
  }
}

TEST_CASE("instant variable ordering: stream instants by time then stream, fresh last") {
  InstantVar a = InstantVar::at(3, 0, Sort::Bool);
  InstantVar b = InstantVar::at(0, 1, Sort::Bool);
  InstantVar c = InstantVar::at(1, 1, Sort::Real);
  InstantVar f0 = InstantVar::fresh(0, Sort::Real);
  InstantVar f1 = InstantVar::fresh(1, Sort::Bool);
  CHECK(a < b);   // earlier time wins regardless of stream index
  CHECK(b < c);   // same time: lower stream index first
  CHECK(c < f0);  // every stream instant precedes every fresh variable
  CHECK(f0 < f1);
  CHECK_FALSE(f0 < f0);
}

TEST_CASE("Boolean constructors fold and canonicalize") {
  SymExpr p = rv(P), q = rv(Q);
  CHECK(is_true(sym_and({})));
  CHECK(is_false(sym_or({})));
  CHECK(is_true(sym_and({sym_bool(true), sym_bool(true)})));
  CHECK(is_false(sym_and({p, sym_bool(false)})));
  CHECK(is_true(sym_or({p, sym_bool(true)})));
  CHECK(sym_and({p, q}) == sym_and({q, p}));
  CHECK(sym_and({p, p}) == p);
  CHECK(sym_or({p, p}) == p);
  CHECK(sym_not(sym_not(p)) == p);
  CHECK(is_false(sym_xor({p, p})));
  CHECK(is_true(sym_xor({p, sym_not(p)})));
  CHECK(sym_implies(sym_bool(true), q) == q);
  CHECK(is_true(sym_implies(sym_bool(false), q)));
}

TEST_CASE("comparison constructors fold ground atoms to constants") {
  CHECK(is_true(sym_le(sym_rat(Rational(2)), sym_rat(Rational(3)))));
  CHECK(is_false(sym_lt(sym_rat(Rational(3)), sym_rat(Rational(3)))));
  CHECK(is_true(sym_eq(sym_rat(rat_frac(1, 2)), sym_rat(rat_frac(2, 4)))));
  SymExpr x = rv(X);
  CHECK(is_true(sym_le(x, x)));
  CHECK(is_false(sym_lt(x, x)));
  CHECK(is_true(sym_eq(sym_sub(x, x), sym_rat(Rational(0)))));
}

TEST_CASE("affine arithmetic keeps terms sorted, merged, and drop-zero") {
  AffineForm fx = AffineForm::of_var(X);
  AffineForm fy = AffineForm::of_var(Y);
  AffineForm s = aff_add(aff_scale(Rational(2), fx), fy);
  s = aff_add(s, aff_scale(Rational(-2), fx));  // x-terms cancel exactly
  REQUIRE(s.terms.size() == 1);
  CHECK(s.terms[0].first == Y);
  CHECK(aff_coeff(s, X) == 0);
  CHECK(aff_coeff(s, Y) == 1);
  CHECK(compare(s, fy) == 0);
  CHECK(compare(aff_neg(s), aff_scale(Rational(-1), fy)) == 0);
}

TEST_CASE("expression measure counts variables, non-unit coefficients, nonzero constants") {
  SymExpr x = rv(X), y = rv(Y);
  CHECK(measure(rv(P)) == 1);
  CHECK(measure(sym_bool(true)) == 1);
  CHECK(measure(sym_le(x, sym_rat(Rational(3)))) == 2);       // x, 3
  CHECK(measure(sym_eq(x, y)) == 2);                          // x, y (unit coeffs)
  CHECK(measure(sym_le(sym_add(sym_scale(Rational(2), x), y), sym_rat(Rational(0)))) == 3);
  CHECK(measure(sym_and({rv(P), rv(Q)})) == 2);
  CHECK(measure(sym_rat(Rational(0))) == 1);  // bare constant still occupies a symbol
  ConstraintSet c;
  c.add(sym_le(x, sym_rat(Rational(3))));
  c.add(rv(P));
  CHECK(measure(c) == 3);
}

TEST_CASE("construction-time rewriting preserves meaning on random expressions") {
  SplitMix64 rng(42);
  for (int i = 0; i < 400; ++i) {
    SymExpr e = gen_expr(rng, 3);
    CHECK(simplify(e) == e);  // already canonical by construction
    for (int j = 0; j < 8; ++j) {
      Assignment a = random_assignment(rng);
      auto got = eval_bool(e, a);
      REQUIRE(got.has_value());
      CHECK(*got == std::get<bool>(oeval(e, a)));
    }
  }
}

TEST_CASE("evaluation is partial: missing variables give no verdict") {
  SymExpr e = sym_and({rv(P), rv(Q)});
  Assignment a;
  a.bools[P] = false;
  // P=ff decides the conjunction no matter what Q is.
  auto got = eval_bool(e, a);
  REQUIRE(got.has_value());
  CHECK_FALSE(*got);
  a.bools[P] = true;  // now Q is load-bearing and absent
  CHECK_FALSE(eval_bool(e, a).has_value());
}

TEST_CASE("substitution composes with evaluation") {
  SplitMix64 rng(7);
  for (int i = 0; i < 300; ++i) {
    SymExpr e = gen_expr(rng, 3);
    // Bind X to an affine combination and Q to a Bool expression.
    std::map<InstantVar, SymExpr> binding;
    SymExpr xe = sym_add(sym_scale(Rational(static_cast<long>(rng.below(3)) + 1), rv(Y)),
                         sym_rat(Rational(static_cast<long>(rng.below(5)) - 2)));
    SymExpr qe = sym_or({rv(P), sym_bool(rng.chance(1, 2))});
    binding.emplace(X, xe);
    binding.emplace(Q, qe);
    SymExpr sub = substitute(e, binding);

    Assignment a = random_assignment(rng);
    Assignment b = a;  // evaluate the bindings under `a`, then e under the update
    b.reals[X] = std::get<Rational>(oeval(xe, a));
    b.bools[Q] = std::get<bool>(oeval(qe, a));
    CHECK(std::get<bool>(oeval(sub, a)) == std::get<bool>(oeval(e, b)));
  }
}

TEST_CASE("substituting a variable by itself is the identity") {
  SplitMix64 rng(13);
  for (int i = 0; i < 100; ++i) {
    SymExpr e = gen_expr(rng, 3);
    std::map<InstantVar, SymExpr> binding;
    binding.emplace(X, rv(X));
    binding.emplace(P, rv(P));
    CHECK(substitute(e, binding) == e);
  }
}

TEST_CASE("collect_vars finds exactly the referenced instants") {
  SymExpr e = sym_and({rv(P), sym_le(sym_add(rv(X), rv(Y)), sym_rat(Rational(1)))});
  std::set<InstantVar> vars;
  collect_vars(e, vars);
  CHECK(vars == std::set<InstantVar>{P, X, Y});
}

TEST_CASE("constraint sets: sorted, deduplicated, tautologies dropped, ff kept") {
  ConstraintSet c;
  c.add(sym_bool(true));
  CHECK(c.empty());
  SymExpr a1 = rv(P), a2 = sym_le(rv(X), sym_rat(Rational(3)));
  c.add(a2);
  c.add(a1);
  c.add(a2);
  CHECK(c.size() == 2);
  CHECK(c.contains(a1));
  CHECK(c.contains(a2));
  CHECK_FALSE(c.contains_false());
  c.add(sym_bool(false));
  CHECK(c.contains_false());
  ConstraintSet d;
  d.add_all(c);
  CHECK(d.size() == c.size());
  // items are strictly ordered
  for (size_t i = 1; i < d.items().size(); ++i) CHECK(d.items()[i - 1] < d.items()[i]);
}

TEST_CASE("rendering names stream instants and fresh variables distinctly") {
  VarNamer namer = default_namer();
  CHECK(var_name(InstantVar::at(2, 5, Sort::Real), namer) == "s2^5");
  CHECK(var_name(InstantVar::fresh(3, Sort::Real), namer) == "$3");
  SymExpr atom = sym_le(sym_add(rv(X), sym_rat(Rational(-3))), sym_rat(Rational(0)));
  std::string s = to_string(atom, namer);
  CHECK(s.find("s0^0") != std::string::npos);
}

TEST_CASE("constraint on Real sort is rejected as a constraint") {
  ConstraintSet c;
  CHECK_THROWS_AS(c.add(rv(X)), InternalError);
}

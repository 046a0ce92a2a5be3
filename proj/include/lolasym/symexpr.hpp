#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lolasym/errors.hpp"
#include "lolasym/rational.hpp"

namespace lolasym {

enum class Sort { Bool, Real };

// A stream value at one instant, or a solver-introduced fresh variable.
struct InstantVar {
  enum class Kind { StreamAt, Fresh };
  Kind kind = Kind::StreamAt;
  uint32_t stream = 0;  // StreamAt: index into the specification's stream table
  int64_t time = 0;     // StreamAt
  uint64_t fresh_id = 0;  // Fresh
  Sort sort = Sort::Bool;

  static InstantVar at(uint32_t stream, int64_t time, Sort sort) {
    InstantVar v;
    v.kind = Kind::StreamAt;
    v.stream = stream;
    v.time = time;
    v.sort = sort;
    return v;
  }
  static InstantVar fresh(uint64_t id, Sort sort) {
    InstantVar v;
    v.kind = Kind::Fresh;
    v.fresh_id = id;
    v.sort = sort;
    return v;
  }
};

// Total order: StreamAt before Fresh; StreamAt by (time, stream); Fresh by id.
int compare(const InstantVar& a, const InstantVar& b);
inline bool operator==(const InstantVar& a, const InstantVar& b) { return compare(a, b) == 0; }
inline bool operator!=(const InstantVar& a, const InstantVar& b) { return compare(a, b) != 0; }
inline bool operator<(const InstantVar& a, const InstantVar& b) { return compare(a, b) < 0; }

// Canonical Real-sorted expression: constant + sum of coeff*var terms,
// terms sorted by variable, coefficients nonzero.
struct AffineForm {
  Rational constant = Rational(0);
  std::vector<std::pair<InstantVar, Rational>> terms;

  bool is_constant() const { return terms.empty(); }
  static AffineForm of_const(Rational c);
  static AffineForm of_var(InstantVar v);
};

AffineForm aff_add(const AffineForm& a, const AffineForm& b);
AffineForm aff_sub(const AffineForm& a, const AffineForm& b);
AffineForm aff_neg(const AffineForm& a);
AffineForm aff_scale(const Rational& k, const AffineForm& a);
int compare(const AffineForm& a, const AffineForm& b);
// Coefficient of var, 0 if absent.
Rational aff_coeff(const AffineForm& a, const InstantVar& v);

enum class NodeKind { BoolConst, BoolVar, Not, And, Or, Xor, Cmp, BoolIte, Affine };
enum class CmpOp { Lt, Le, Eq };

struct Node;

// Immutable handle to a canonical expression. Bool-sorted expressions are
// built from BoolConst/BoolVar/Not/And/Or/Xor/Cmp/BoolIte; every Real-sorted
// expression is a single Affine node. Construction goes through the sym_*
// functions below, which enforce the canonical form, so simplify is the
// identity on anything already built.
class SymExpr {
 public:
  SymExpr() = default;
  explicit SymExpr(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  const Node& node() const { return *p_; }
  bool valid() const { return p_ != nullptr; }
  NodeKind kind() const;
  Sort sort() const;

 private:
  std::shared_ptr<const Node> p_;
};

struct Node {
  NodeKind kind;
  bool bval = false;            // BoolConst
  InstantVar var;               // BoolVar
  CmpOp op = CmpOp::Eq;         // Cmp: aff op 0
  AffineForm aff;               // Cmp, Affine
  std::vector<SymExpr> kids;    // Not(1), And/Or/Xor(n>=2), BoolIte(3)
};

// --- canonical constructors ---------------------------------------------

SymExpr sym_bool(bool b);
SymExpr sym_rat(const Rational& q);
SymExpr sym_var(const InstantVar& v);
SymExpr sym_affine(AffineForm a);

SymExpr sym_not(const SymExpr& e);
SymExpr sym_and(std::vector<SymExpr> kids);
SymExpr sym_or(std::vector<SymExpr> kids);
SymExpr sym_xor(std::vector<SymExpr> kids);
SymExpr sym_implies(const SymExpr& a, const SymExpr& b);
SymExpr sym_iff(const SymExpr& a, const SymExpr& b);
// Comparison `a op 0` in canonical scale (leading coefficient +-1; positive
// for equations). Ground forms fold to BoolConst.
SymExpr sym_cmp(CmpOp op, AffineForm a);
// Sort-dispatching equality / comparisons / arithmetic.
SymExpr sym_eq(const SymExpr& a, const SymExpr& b);
SymExpr sym_lt(const SymExpr& a, const SymExpr& b);
SymExpr sym_le(const SymExpr& a, const SymExpr& b);
SymExpr sym_add(const SymExpr& a, const SymExpr& b);
SymExpr sym_sub(const SymExpr& a, const SymExpr& b);
SymExpr sym_neg(const SymExpr& a);
SymExpr sym_scale(const Rational& k, const SymExpr& a);
// Bool-sorted branches only; Real ite must be rewritten away before the
// symbolic layer sees it.
SymExpr sym_ite(const SymExpr& c, const SymExpr& t, const SymExpr& e);

// --- operations -----------------------------------------------------------

int compare(const SymExpr& a, const SymExpr& b);
inline bool operator==(const SymExpr& a, const SymExpr& b) { return compare(a, b) == 0; }
inline bool operator!=(const SymExpr& a, const SymExpr& b) { return compare(a, b) != 0; }
inline bool operator<(const SymExpr& a, const SymExpr& b) { return compare(a, b) < 0; }

bool is_true(const SymExpr& e);
bool is_false(const SymExpr& e);

// Number of variable and constant occurrences in canonical form; function
// applications contribute the sum of their arguments. Coefficients of
// magnitude 1 and zero constant terms are not written, hence not counted.
size_t measure(const SymExpr& e);

void collect_vars(const SymExpr& e, std::set<InstantVar>& out);

// Simultaneous substitution followed by re-canonicalization. Real-sorted
// variables must map to Real-sorted expressions.
SymExpr substitute(const SymExpr& e, const std::map<InstantVar, SymExpr>& binding);

// Canonicalization pass. Construction already yields canonical forms, so this
// is the identity; kept as the named operation with that contract.
SymExpr simplify(const SymExpr& e);

// Three-valued evaluation under a partial assignment: nullopt when the value
// depends on an unassigned variable.
struct Assignment {
  std::map<InstantVar, bool> bools;
  std::map<InstantVar, Rational> reals;
};
std::optional<bool> eval_bool(const SymExpr& e, const Assignment& a);
std::optional<Rational> eval_affine(const AffineForm& f, const Assignment& a);

// Printing. The resolver maps StreamAt vars to names; fresh vars print $id.
using VarNamer = std::function<std::string(const InstantVar&)>;
VarNamer default_namer();
std::string to_string(const SymExpr& e, const VarNamer& namer = default_namer());
std::string to_string(const AffineForm& f, const VarNamer& namer = default_namer());
std::string var_name(const InstantVar& v, const VarNamer& namer = default_namer());

// --- constraint sets -------------------------------------------------------

// Deterministically ordered set of Bool-sorted constraints. Adding `tt` is a
// no-op; `ff` is kept (it records inconsistency).
class ConstraintSet {
 public:
  void add(const SymExpr& e);
  void add_all(const ConstraintSet& other);
  bool contains(const SymExpr& e) const;
  bool contains_false() const;
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<SymExpr>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  void clear() { items_.clear(); }

 private:
  std::vector<SymExpr> items_;  // sorted, unique
};

size_t measure(const ConstraintSet& c);
std::set<InstantVar> vars_of(const ConstraintSet& c);
std::string to_string(const ConstraintSet& c, const VarNamer& namer = default_namer());

}  // namespace lolasym

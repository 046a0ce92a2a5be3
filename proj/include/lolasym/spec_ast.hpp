#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lolasym/rational.hpp"
#include "lolasym/symexpr.hpp"

namespace lolasym {

// A concrete literal of either sort, used for constants and offset defaults.
struct Value {
  Sort sort = Sort::Bool;
  bool b = false;
  Rational r;

  static Value of_bool(bool v);
  static Value of_rat(Rational v);
};

bool operator==(const Value& a, const Value& b);
inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }
std::string to_string(const Value& v);

// Function symbols of the stream expression language.  Comparisons apply to
// Real operands only; `a > b` and `a >= b` are parsed as flipped Lt/Le.
enum class Op { Not, And, Or, Xor, Implies, Add, Sub, Neg, Mul, Lt, Le, Eq };

struct SNode;

// Immutable stream expression tree as written in a specification: constants,
// offset stream accesses s[o|d] (with s[now] ≡ offset 0, no default), function
// applications, and ite.
class StreamExpr {
 public:
  StreamExpr() = default;
  explicit StreamExpr(std::shared_ptr<const SNode> p) : p_(std::move(p)) {}
  const SNode& node() const { return *p_; }
  bool valid() const { return p_ != nullptr; }

 private:
  std::shared_ptr<const SNode> p_;
};

struct SNode {
  enum class Kind { Const, Offset, Fun, Ite };
  Kind kind = Kind::Const;
  Value cval;                 // Const
  uint32_t stream = 0;        // Offset: index into Specification::streams
  int64_t offset = 0;         // Offset
  std::optional<Value> dflt;  // Offset: required iff offset != 0
  Op op = Op::Not;            // Fun
  std::vector<StreamExpr> args;  // Fun operands; Ite stores {cond, then, else}
};

StreamExpr se_const(Value v);
StreamExpr se_bool(bool v);
StreamExpr se_rat(Rational v);
StreamExpr se_offset(uint32_t stream, int64_t offset, std::optional<Value> dflt);
StreamExpr se_fun(Op op, std::vector<StreamExpr> args);
StreamExpr se_ite(StreamExpr c, StreamExpr t, StreamExpr e);

bool operator==(const StreamExpr& a, const StreamExpr& b);
inline bool operator!=(const StreamExpr& a, const StreamExpr& b) { return !(a == b); }

enum class StreamKind {
  Input,          // fed by trace readings
  Output,         // has a defining expression
  Unconstrained,  // input-like but never read from a trace; pinned by assumptions
};

struct StreamDecl {
  std::string name;
  Sort sort = Sort::Real;
  StreamKind kind = StreamKind::Input;
  std::optional<StreamExpr> def;  // present iff kind == Output
  bool synthetic = false;         // engine-introduced (delay/ite helper): no verdicts
};

struct Specification {
  std::vector<StreamDecl> streams;      // declaration order; Offset nodes index this
  std::vector<StreamExpr> assumptions;  // Bool-sorted, hold at every instant

  std::optional<uint32_t> index_of(const std::string& name) const;
  // Deepest past offset referenced by any assumption (0 if none).
  int64_t assumption_lookback() const;
};

// Structural equality; the synthetic flag is presentation metadata and ignored.
bool operator==(const StreamDecl& a, const StreamDecl& b);
bool operator==(const Specification& a, const Specification& b);
inline bool operator!=(const Specification& a, const Specification& b) { return !(a == b); }

// Sort of a well-sorted expression (no checking; see parse_spec for checking).
Sort sort_of(const StreamExpr& e, const Specification& spec);

// Folds an expression to a literal when it contains no stream access.
std::optional<Value> fold_const(const StreamExpr& e);

// Deepest past offset in the expression: max over accesses of max(0, -offset).
int64_t max_lookback(const StreamExpr& e);

enum class Fragment { B, LA, B_LA, B_LA_ite, Unsupported };

// Specificity order: B and LA are the most specific (rank 0), then B_LA,
// B_LA_ite, Unsupported.
int fragment_rank(Fragment f);
const char* to_string(Fragment f);

// Parses the specification language:
//   input <name> : <Bool|Real>
//   output <name> := <expr>
//   unconstrained <name> : <Bool|Real>
//   assumption <bool-expr>
// Expressions: literals (tt/ff, decimals, p/q), name (≡ name[now]), name[now],
// name[o|lit], parentheses, ite(c,t,e), `not`/`!`, && ^ || ->, + - *, < <= > >= =.
// Resolves identifiers, infers output sorts, checks sorts, and rejects
// zero-offset dependency cycles.  Throws SpecError with line:col positions.
Specification parse_spec(const std::string& text);

// Round-trippable text form: parse_spec(print_spec(s)) is structurally equal to s.
std::string print_spec(const Specification& spec);

// Returns output stream indices in an evaluation order where every 0-offset
// dependency precedes its dependent; throws SpecError listing the streams of a
// zero-offset cycle otherwise.  Deterministic: prefers declaration order.
std::vector<uint32_t> check_well_formed(const Specification& spec);

// Rewrites every offset to be -1 or 0 by introducing synthetic delay streams
// (base name + "_d" + depth); an offset of -k needs k-1 of them.  Delay chains
// carry the default of the rewritten access, so accesses to one stream with
// distinct defaults get distinct chains.  Positive offsets are rejected here.
Specification flatten(const Specification& spec);

// Most specific tag covering every output definition and assumption of a
// flattened spec.  Real-valued ite promotes to B_LA_ite; anything outside the
// fragment signatures (e.g. products of two streams) is Unsupported.
Fragment classify_fragment(const Specification& spec);

// Eliminates ite from a flattened spec: a Real-valued ite becomes a synthetic
// unconstrained stream h plus assumption (c && h = t) || (!c && h = e); a
// Bool-valued ite(c,t,e) is expanded in place to (c && t) || (!c && e).
Specification rewrite_ite(const Specification& spec);

}  // namespace lolasym

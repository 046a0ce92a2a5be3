#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lolasym/errors.hpp"
#include "lolasym/spec_ast.hpp"

namespace lolasym {

namespace {

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 0;
  int col = 0;
};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_keyword(const std::string& s) {
  static const char* kws[] = {"input", "output", "unconstrained", "assumption", "not",
                              "ite",   "now",    "tt",            "ff",         "Bool",
                              "Real"};
  for (const char* k : kws)
    if (s == k) return true;
  return false;
}

std::vector<Token> tokenize_line(const std::string& s, int line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    int col = static_cast<int>(i) + 1;
    if (is_ident_start(c)) {
      size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      out.push_back({Token::Kind::Ident, s.substr(i, j - i), line, col});
      i = j;
      continue;
    }
    if (is_digit(c)) {
      size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j < s.size() && s[j] == '.' && j + 1 < s.size() && is_digit(s[j + 1])) {
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
      } else if (j < s.size() && s[j] == '/' && j + 1 < s.size() && is_digit(s[j + 1])) {
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
      }
      out.push_back({Token::Kind::Number, s.substr(i, j - i), line, col});
      i = j;
      continue;
    }
    // multi-character punctuation first
    static const char* puncts[] = {":=", "->", "<=", ">=", "&&", "||", "<", ">", "=", "+",
                                   "-",  "*",  "^",  "!",  "(",  ")",  "[", "]", "|", ":",
                                   ","};
    const char* hit = nullptr;
    for (const char* p : puncts) {
      size_t len = std::string(p).size();
      if (s.compare(i, len, p) == 0) {
        hit = p;
        break;
      }
    }
    if (!hit)
      throw SpecError(std::string("unexpected character '") + c + "'", line, col);
    out.push_back({Token::Kind::Punct, hit, line, col});
    i += std::string(hit).size();
  }
  out.push_back({Token::Kind::End, "", line, static_cast<int>(s.size()) + 1});
  return out;
}

// Unresolved parse tree; names and positions survive until the sort check.
struct PExpr {
  enum class Kind { Lit, Ref, Fun, Ite };
  Kind kind = Kind::Lit;
  Value lit;
  std::string name;  // Ref
  int64_t offset = 0;
  std::optional<Value> dflt;
  Op op = Op::Not;  // Fun
  std::vector<PExpr> args;
  int line = 0, col = 0;
};

struct LineParser {
  const std::vector<Token>& ts;
  size_t pos = 0;

  const Token& peek() const { return ts[pos]; }
  Token next() { return ts[pos++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecError(msg, peek().line, peek().col);
  }

  bool at_punct(const char* p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  bool at_ident(const char* w) const {
    return peek().kind == Token::Kind::Ident && peek().text == w;
  }
  bool eat_punct(const char* p) {
    if (!at_punct(p)) return false;
    ++pos;
    return true;
  }
  void expect_punct(const char* p) {
    if (!eat_punct(p)) fail(std::string("expected '") + p + "'");
  }

  Rational number() {
    if (peek().kind != Token::Kind::Number) fail("expected a number");
    auto r = parse_rational(peek().text);
    if (!r) fail("malformed number '" + peek().text + "'");
    ++pos;
    return *r;
  }

  // tt | ff | [-]number, used for constants and offset defaults
  Value literal() {
    if (at_ident("tt")) {
      ++pos;
      return Value::of_bool(true);
    }
    if (at_ident("ff")) {
      ++pos;
      return Value::of_bool(false);
    }
    bool neg = eat_punct("-");
    Rational r = number();
    return Value::of_rat(neg ? Rational(-r) : r);
  }

  PExpr mk(PExpr e, const Token& t) {
    e.line = t.line;
    e.col = t.col;
    return e;
  }

  PExpr parse_expr() { return parse_implies(); }

  PExpr parse_implies() {
    PExpr l = parse_or();
    if (at_punct("->")) {
      Token t = next();
      PExpr r = parse_implies();  // right-associative
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::Implies;
      e.args = {std::move(l), std::move(r)};
      return mk(std::move(e), t);
    }
    return l;
  }

  PExpr parse_or() {
    PExpr l = parse_xor();
    while (at_punct("||")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::Or;
      e.args = {std::move(l), parse_xor()};
      l = mk(std::move(e), t);
    }
    return l;
  }

  PExpr parse_xor() {
    PExpr l = parse_and();
    while (at_punct("^")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::Xor;
      e.args = {std::move(l), parse_and()};
      l = mk(std::move(e), t);
    }
    return l;
  }

  PExpr parse_and() {
    PExpr l = parse_cmp();
    while (at_punct("&&")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::And;
      e.args = {std::move(l), parse_cmp()};
      l = mk(std::move(e), t);
    }
    return l;
  }

  bool at_cmp() const {
    return at_punct("<") || at_punct("<=") || at_punct(">") || at_punct(">=") || at_punct("=");
  }

  PExpr parse_cmp() {
    PExpr l = parse_add();
    if (!at_cmp()) return l;
    Token t = next();
    PExpr r = parse_add();
    if (at_cmp()) fail("comparisons do not chain; use && to combine them");
    PExpr e;
    e.kind = PExpr::Kind::Fun;
    // a > b and a >= b are stored as flipped < / <=
    if (t.text == "<")
      e.op = Op::Lt;
    else if (t.text == "<=")
      e.op = Op::Le;
    else if (t.text == "=")
      e.op = Op::Eq;
    else
      e.op = t.text == ">" ? Op::Lt : Op::Le;
    if (t.text == ">" || t.text == ">=")
      e.args = {std::move(r), std::move(l)};
    else
      e.args = {std::move(l), std::move(r)};
    return mk(std::move(e), t);
  }

  PExpr parse_add() {
    PExpr l = parse_mul();
    while (at_punct("+") || at_punct("-")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = t.text == "+" ? Op::Add : Op::Sub;
      e.args = {std::move(l), parse_mul()};
      l = mk(std::move(e), t);
    }
    return l;
  }

  PExpr parse_mul() {
    PExpr l = parse_unary();
    while (at_punct("*")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::Mul;
      e.args = {std::move(l), parse_unary()};
      l = mk(std::move(e), t);
    }
    return l;
  }

  PExpr parse_unary() {
    if (at_ident("not") || at_punct("!")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::Not;
      e.args = {parse_unary()};
      return mk(std::move(e), t);
    }
    if (at_punct("-")) {
      Token t = next();
      PExpr e;
      e.kind = PExpr::Kind::Fun;
      e.op = Op::Neg;
      e.args = {parse_unary()};
      return mk(std::move(e), t);
    }
    return parse_atom();
  }

  PExpr parse_atom() {
    Token t = peek();
    if (eat_punct("(")) {
      PExpr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (at_ident("ite")) {
      next();
      expect_punct("(");
      PExpr c = parse_expr();
      expect_punct(",");
      PExpr th = parse_expr();
      expect_punct(",");
      PExpr el = parse_expr();
      expect_punct(")");
      PExpr e;
      e.kind = PExpr::Kind::Ite;
      e.args = {std::move(c), std::move(th), std::move(el)};
      return mk(std::move(e), t);
    }
    if (at_ident("tt") || at_ident("ff") || peek().kind == Token::Kind::Number) {
      PExpr e;
      e.kind = PExpr::Kind::Lit;
      e.lit = literal();
      return mk(std::move(e), t);
    }
    if (peek().kind == Token::Kind::Ident) {
      if (is_keyword(peek().text)) fail("'" + peek().text + "' is a reserved word");
      std::string name = next().text;
      PExpr e;
      e.kind = PExpr::Kind::Ref;
      e.name = name;
      e.offset = 0;
      if (eat_punct("[")) {
        if (at_ident("now")) {
          next();
        } else {
          bool neg = eat_punct("-");
          if (!neg) eat_punct("+");
          if (peek().kind != Token::Kind::Number) fail("expected an integer offset or 'now'");
          Token ot = next();
          if (ot.text.find('.') != std::string::npos || ot.text.find('/') != std::string::npos)
            throw SpecError("stream offsets must be integers", ot.line, ot.col);
          e.offset = std::stoll(ot.text) * (neg ? -1 : 1);
          if (e.offset != 0) {
            expect_punct("|");
            e.dflt = literal();
          } else if (eat_punct("|")) {
            literal();  // s[0|v] normalizes to s[now]; the default is irrelevant
          }
        }
        expect_punct("]");
      }
      return mk(std::move(e), t);
    }
    fail("expected an expression");
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) fail("unexpected trailing input");
  }
};

struct RawDecl {
  StreamKind kind = StreamKind::Input;
  std::string name;
  Sort sort = Sort::Real;  // input/unconstrained only
  std::optional<PExpr> def;
  int line = 0, col = 0;
};

struct SpecBuilder {
  std::vector<RawDecl> decls;
  std::vector<PExpr> raw_assumptions;
  std::map<std::string, uint32_t> index;
  std::vector<std::optional<Sort>> sorts;
  Specification spec;

  uint32_t resolve_name(const std::string& name, int line, int col) const {
    auto it = index.find(name);
    if (it == index.end()) throw SpecError("unknown stream '" + name + "'", line, col);
    return it->second;
  }

  StreamExpr resolve(const PExpr& e) const {
    switch (e.kind) {
      case PExpr::Kind::Lit:
        return se_const(e.lit);
      case PExpr::Kind::Ref:
        return se_offset(resolve_name(e.name, e.line, e.col), e.offset,
                         e.offset == 0 ? std::nullopt : e.dflt);
      case PExpr::Kind::Fun: {
        std::vector<StreamExpr> args;
        for (const auto& a : e.args) args.push_back(resolve(a));
        return se_fun(e.op, std::move(args));
      }
      case PExpr::Kind::Ite:
        return se_ite(resolve(e.args[0]), resolve(e.args[1]), resolve(e.args[2]));
    }
    throw InternalError("unreachable parse node kind");
  }

  std::optional<Sort> synth(const StreamExpr& e) const {
    const SNode& n = e.node();
    switch (n.kind) {
      case SNode::Kind::Const:
        return n.cval.sort;
      case SNode::Kind::Offset:
        return n.offset != 0 ? std::optional<Sort>(n.dflt->sort) : sorts[n.stream];
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
      case SNode::Kind::Ite: {
        auto t = synth(n.args[1]);
        return t ? t : synth(n.args[2]);
      }
    }
    return std::nullopt;
  }

  [[noreturn]] void sort_fail(const PExpr& e, const std::string& msg) const {
    throw SpecError("sort mismatch: " + msg, e.line, e.col);
  }

  Sort check(const PExpr& e) const {
    switch (e.kind) {
      case PExpr::Kind::Lit:
        return e.lit.sort;
      case PExpr::Kind::Ref: {
        uint32_t idx = resolve_name(e.name, e.line, e.col);
        Sort s = *sorts[idx];
        if (e.offset != 0 && e.dflt->sort != s)
          sort_fail(e, "default for stream '" + e.name + "' must be " +
                           (s == Sort::Bool ? "Bool" : "Real"));
        return s;
      }
      case PExpr::Kind::Fun: {
        auto want = [&](const PExpr& a, Sort s, const char* what) {
          if (check(a) != s)
            sort_fail(a, std::string(what) + " requires a " +
                             (s == Sort::Bool ? "Bool" : "Real") + " operand");
        };
        switch (e.op) {
          case Op::Not:
            want(e.args[0], Sort::Bool, "'not'");
            return Sort::Bool;
          case Op::And:
          case Op::Or:
          case Op::Xor:
          case Op::Implies:
            want(e.args[0], Sort::Bool, "a Boolean connective");
            want(e.args[1], Sort::Bool, "a Boolean connective");
            return Sort::Bool;
          case Op::Neg:
            want(e.args[0], Sort::Real, "unary '-'");
            return Sort::Real;
          case Op::Add:
          case Op::Sub:
          case Op::Mul:
            want(e.args[0], Sort::Real, "an arithmetic operator");
            want(e.args[1], Sort::Real, "an arithmetic operator");
            return Sort::Real;
          case Op::Lt:
          case Op::Le:
          case Op::Eq:
            want(e.args[0], Sort::Real, "a comparison");
            want(e.args[1], Sort::Real, "a comparison");
            return Sort::Bool;
        }
        throw InternalError("unreachable operator");
      }
      case PExpr::Kind::Ite: {
        if (check(e.args[0]) != Sort::Bool) sort_fail(e.args[0], "ite condition must be Bool");
        Sort t = check(e.args[1]);
        if (check(e.args[2]) != t) sort_fail(e.args[2], "ite branches must have the same sort");
        return t;
      }
    }
    throw InternalError("unreachable parse node kind");
  }

  Specification build() {
    for (const auto& d : decls) {
      if (index.count(d.name))
        throw SpecError("duplicate stream name '" + d.name + "'", d.line, d.col);
      index[d.name] = static_cast<uint32_t>(spec.streams.size());
      StreamDecl decl;
      decl.name = d.name;
      decl.kind = d.kind;
      decl.sort = d.sort;  // placeholder for outputs until inference below
      spec.streams.push_back(std::move(decl));
      sorts.push_back(d.kind == StreamKind::Output ? std::optional<Sort>() : d.sort);
    }
    for (size_t i = 0; i < decls.size(); ++i)
      if (decls[i].def) spec.streams[i].def = resolve(*decls[i].def);
    for (const auto& a : raw_assumptions) spec.assumptions.push_back(resolve(a));

    // Zero-offset acyclicity first: the topological order below also drives
    // sort inference (pass-through definitions resolve once their 0-offset
    // dependencies have).
    std::vector<uint32_t> order = check_well_formed(spec);
    for (uint32_t i : order) {
      auto s = synth(*spec.streams[i].def);
      require(s.has_value(), "sort inference incomplete on an acyclic specification");
      sorts[i] = *s;
      spec.streams[i].sort = *s;
    }

    for (const auto& d : decls)
      if (d.def) check(*d.def);
    for (const auto& a : raw_assumptions)
      if (check(a) != Sort::Bool)
        throw SpecError("sort mismatch: assumption must be Bool", a.line, a.col);
    return spec;
  }
};

Sort parse_sort(LineParser& p) {
  if (p.at_ident("Bool")) {
    p.next();
    return Sort::Bool;
  }
  if (p.at_ident("Real")) {
    p.next();
    return Sort::Real;
  }
  p.fail("expected 'Bool' or 'Real'");
}

std::string parse_decl_name(LineParser& p) {
  if (p.peek().kind != Token::Kind::Ident) p.fail("expected a stream name");
  if (is_keyword(p.peek().text)) p.fail("'" + p.peek().text + "' is a reserved word");
  return p.next().text;
}

}  // namespace

Specification parse_spec(const std::string& text) {
  SpecBuilder b;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<Token> ts = tokenize_line(line, lineno);
    LineParser p{ts};
    if (p.peek().kind == Token::Kind::End) continue;
    if (p.peek().kind != Token::Kind::Ident)
      p.fail("expected 'input', 'output', 'unconstrained' or 'assumption'");
    std::string head = p.peek().text;
    if (head == "input" || head == "unconstrained") {
      Token ht = p.next();
      RawDecl d;
      d.kind = head == "input" ? StreamKind::Input : StreamKind::Unconstrained;
      d.line = ht.line;
      d.col = ht.col;
      d.name = parse_decl_name(p);
      p.expect_punct(":");
      d.sort = parse_sort(p);
      p.expect_end();
      b.decls.push_back(std::move(d));
    } else if (head == "output") {
      Token ht = p.next();
      RawDecl d;
      d.kind = StreamKind::Output;
      d.line = ht.line;
      d.col = ht.col;
      d.name = parse_decl_name(p);
      p.expect_punct(":=");
      d.def = p.parse_expr();
      p.expect_end();
      b.decls.push_back(std::move(d));
    } else if (head == "assumption") {
      p.next();
      b.raw_assumptions.push_back(p.parse_expr());
      p.expect_end();
    } else {
      p.fail("expected 'input', 'output', 'unconstrained' or 'assumption'");
    }
  }
  return b.build();
}

}  // namespace lolasym

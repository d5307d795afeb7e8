// Semantic types and lambda terms, normalization, typing, and term
// extraction from proofs.

#ifndef DISPLACE_SEMANTICS_HPP
#define DISPLACE_SEMANTICS_HPP

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "displace/config.hpp"
#include "displace/matcher.hpp"
#include "displace/proof.hpp"
#include "displace/rules.hpp"
#include "displace/type.hpp"

namespace displace {

// ---------------------------------------------------------------------------
// Semantic types

struct SemTypeNode;
using SemType = std::shared_ptr<const SemTypeNode>;

struct SemTypeNode {
  enum class Kind : std::uint8_t { e, t, arrow, pair, unit, meta };
  Kind kind = Kind::e;
  SemType left, right;
  int meta = -1;  // inference variable id for Kind::meta
};

inline SemType sem_e() {
  static const SemType v = std::make_shared<const SemTypeNode>(SemTypeNode{SemTypeNode::Kind::e, nullptr, nullptr});
  return v;
}
inline SemType sem_t() {
  static const SemType v = std::make_shared<const SemTypeNode>(SemTypeNode{SemTypeNode::Kind::t, nullptr, nullptr});
  return v;
}
inline SemType sem_unit() {
  static const SemType v =
      std::make_shared<const SemTypeNode>(SemTypeNode{SemTypeNode::Kind::unit, nullptr, nullptr});
  return v;
}
inline SemType sem_arrow(SemType a, SemType b) {
  return std::make_shared<const SemTypeNode>(SemTypeNode{SemTypeNode::Kind::arrow, std::move(a), std::move(b)});
}
inline SemType sem_pair(SemType a, SemType b) {
  return std::make_shared<const SemTypeNode>(SemTypeNode{SemTypeNode::Kind::pair, std::move(a), std::move(b)});
}
inline SemType sem_meta(int id) {
  return std::make_shared<const SemTypeNode>(SemTypeNode{SemTypeNode::Kind::meta, nullptr, nullptr, id});
}

inline bool same_sem_type(const SemType& a, const SemType& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case SemTypeNode::Kind::arrow:
    case SemTypeNode::Kind::pair: return same_sem_type(a->left, b->left) && same_sem_type(a->right, b->right);
    case SemTypeNode::Kind::meta: return a->meta == b->meta;
    default: return true;
  }
}

inline std::string render_sem_type(const SemType& s) {
  using K = SemTypeNode::Kind;
  auto wrap = [](const SemType& x) {
    std::string r = render_sem_type(x);
    return x->kind == K::arrow || x->kind == K::pair ? "(" + r + ")" : r;
  };
  switch (s->kind) {
    case K::e: return "e";
    case K::t: return "t";
    case K::unit: return "unit";
    case K::meta: return "?" + std::to_string(s->meta);
    case K::pair: return wrap(s->left) + " * " + wrap(s->right);
    case K::arrow: {
      std::string r = render_sem_type(s->right);
      if (s->right->kind == K::pair) r = "(" + r + ")";
      return wrap(s->left) + " -> " + r;
    }
  }
  return "?";
}

namespace detail {

struct SemTypeReader {
  std::string_view s;
  std::size_t pos = 0;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(what, pos); }
  bool accept(std::string_view tok) {
    ws();
    if (s.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  SemType atom() {
    ws();
    if (accept("(")) {
      SemType t = arrow();
      if (!accept(")")) fail("expected ')'");
      return t;
    }
    std::size_t b = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string_view w = s.substr(b, pos - b);
    if (w == "e") return sem_e();
    if (w == "t") return sem_t();
    if (w == "unit") return sem_unit();
    pos = b;
    fail("expected semantic type");
  }
  SemType prod() {
    SemType t = atom();
    while (accept("*")) t = sem_pair(t, atom());
    return t;
  }
  SemType arrow() {
    SemType t = prod();
    if (accept("->")) return sem_arrow(t, arrow());
    return t;
  }
};

}  // namespace detail

// Grammar: e | t | unit | a * b | a -> b (right associative), parentheses.
inline SemType parse_sem_type(std::string_view text) {
  detail::SemTypeReader r{text};
  SemType t = r.arrow();
  r.ws();
  if (r.pos != text.size()) r.fail("unexpected trailing input");
  return t;
}

using AtomTable = std::map<std::string, SemType>;

inline AtomTable default_atoms() {
  return {{"N", sem_e()}, {"S", sem_t()}, {"CN", sem_arrow(sem_e(), sem_t())}, {"PP", sem_e()}, {"CP", sem_t()}};
}

class SemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The homomorphism from syntactic to semantic types.
inline SemType sem_type(const Type& t, const AtomTable& atoms = default_atoms()) {
  switch (t->op()) {
    case Connective::atom: {
      auto it = atoms.find(t->name());
      if (it == atoms.end()) throw SemError("unknown atom " + t->name());
      return it->second;
    }
    case Connective::under:
    case Connective::infix: return sem_arrow(sem_type(t->left(), atoms), sem_type(t->right(), atoms));
    case Connective::over:
    case Connective::extract: return sem_arrow(sem_type(t->right(), atoms), sem_type(t->left(), atoms));
    case Connective::product:
    case Connective::disc_product: return sem_pair(sem_type(t->left(), atoms), sem_type(t->right(), atoms));
    case Connective::unit_i:
    case Connective::unit_j: return sem_unit();
  }
  throw SemError("bad type");
}

// ---------------------------------------------------------------------------
// Terms

struct TermNode;
using SemTerm = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind : std::uint8_t { var, cnst, app, lam, pair, proj1, proj2, unit };
  Kind kind = Kind::unit;
  std::string name;  // var, cnst, lam binder
  SemTerm a, b;      // app: a b; lam: body in a; pair: <a, b>; proj: a
};

namespace term {

inline SemTerm mk(TermNode::Kind k, std::string name, SemTerm a = nullptr, SemTerm b = nullptr) {
  return std::make_shared<const TermNode>(TermNode{k, std::move(name), std::move(a), std::move(b)});
}
inline SemTerm var(std::string n) { return mk(TermNode::Kind::var, std::move(n)); }
inline SemTerm cnst(std::string n) { return mk(TermNode::Kind::cnst, std::move(n)); }
inline SemTerm app(SemTerm f, SemTerm x) { return mk(TermNode::Kind::app, {}, std::move(f), std::move(x)); }
inline SemTerm app(SemTerm f, SemTerm x, SemTerm y) { return app(app(std::move(f), std::move(x)), std::move(y)); }
inline SemTerm lam(std::string x, SemTerm body) { return mk(TermNode::Kind::lam, std::move(x), std::move(body)); }
inline SemTerm pair(SemTerm x, SemTerm y) { return mk(TermNode::Kind::pair, {}, std::move(x), std::move(y)); }
inline SemTerm proj1(SemTerm x) { return mk(TermNode::Kind::proj1, {}, std::move(x)); }
inline SemTerm proj2(SemTerm x) { return mk(TermNode::Kind::proj2, {}, std::move(x)); }
inline SemTerm unit() {
  static const SemTerm u = mk(TermNode::Kind::unit, {});
  return u;
}

}  // namespace term

inline void free_vars_into(const SemTerm& t, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = TermNode::Kind;
  switch (t->kind) {
    case K::var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case K::lam: {
      bool fresh = bound.insert(t->name).second;
      free_vars_into(t->a, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    default:
      if (t->a) free_vars_into(t->a, bound, out);
      if (t->b) free_vars_into(t->b, bound, out);
  }
}

inline std::set<std::string> free_vars(const SemTerm& t) {
  std::set<std::string> bound, out;
  free_vars_into(t, bound, out);
  return out;
}

namespace detail {

inline void all_names_into(const SemTerm& t, std::set<std::string>& out) {
  if (t->kind == TermNode::Kind::var || t->kind == TermNode::Kind::lam) out.insert(t->name);
  if (t->a) all_names_into(t->a, out);
  if (t->b) all_names_into(t->b, out);
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

inline SemTerm subst(const SemTerm& t, const std::string& x, const SemTerm& s, const std::set<std::string>& fv_s) {
  using K = TermNode::Kind;
  switch (t->kind) {
    case K::var: return t->name == x ? s : t;
    case K::cnst:
    case K::unit: return t;
    case K::lam: {
      if (t->name == x) return t;
      std::set<std::string> fv_body = free_vars(t->a);
      if (!fv_body.count(x)) return t;
      if (fv_s.count(t->name)) {
        std::set<std::string> avoid = fv_s;
        avoid.insert(fv_body.begin(), fv_body.end());
        avoid.insert(x);
        std::string y = fresh_name(t->name, avoid);
        SemTerm body = subst(t->a, t->name, term::var(y), {y});
        return term::lam(y, subst(body, x, s, fv_s));
      }
      return term::lam(t->name, subst(t->a, x, s, fv_s));
    }
    default: {
      SemTerm a = t->a ? subst(t->a, x, s, fv_s) : nullptr;
      SemTerm b = t->b ? subst(t->b, x, s, fv_s) : nullptr;
      if (a == t->a && b == t->b) return t;
      return term::mk(t->kind, t->name, a, b);
    }
  }
}

}  // namespace detail

// Capture-avoiding substitution t[x := s].
inline SemTerm substitute(const SemTerm& t, const std::string& x, const SemTerm& s) {
  return detail::subst(t, x, s, free_vars(s));
}

// Beta and projection normal form.
inline SemTerm normalize(const SemTerm& t) {
  using K = TermNode::Kind;
  switch (t->kind) {
    case K::var:
    case K::cnst:
    case K::unit: return t;
    case K::lam: return term::lam(t->name, normalize(t->a));
    case K::pair: return term::pair(normalize(t->a), normalize(t->b));
    case K::proj1:
    case K::proj2: {
      SemTerm x = normalize(t->a);
      if (x->kind == K::pair) return t->kind == K::proj1 ? x->a : x->b;
      return term::mk(t->kind, {}, x);
    }
    case K::app: {
      SemTerm f = normalize(t->a);
      if (f->kind == K::lam) return normalize(substitute(f->a, f->name, t->b));
      return term::app(f, normalize(t->b));
    }
  }
  return t;
}

namespace detail {

inline bool alpha_eq(const SemTerm& a, const SemTerm& b, std::map<std::string, int>& ma, std::map<std::string, int>& mb,
                     int depth) {
  using K = TermNode::Kind;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case K::var: {
      auto ia = ma.find(a->name), ib = mb.find(b->name);
      if (ia == ma.end() || ib == mb.end()) return ia == ma.end() && ib == mb.end() && a->name == b->name;
      return ia->second == ib->second;
    }
    case K::cnst: return a->name == b->name;
    case K::unit: return true;
    case K::lam: {
      auto sa = ma.find(a->name);
      auto sb = mb.find(b->name);
      std::optional<int> oa = sa == ma.end() ? std::nullopt : std::optional<int>(sa->second);
      std::optional<int> ob = sb == mb.end() ? std::nullopt : std::optional<int>(sb->second);
      ma[a->name] = depth;
      mb[b->name] = depth;
      bool r = alpha_eq(a->a, b->a, ma, mb, depth + 1);
      if (oa) ma[a->name] = *oa; else ma.erase(a->name);
      if (ob) mb[b->name] = *ob; else mb.erase(b->name);
      return r;
    }
    default:
      return alpha_eq(a->a, b->a, ma, mb, depth) && (!a->b || alpha_eq(a->b, b->b, ma, mb, depth));
  }
}

}  // namespace detail

inline bool alpha_eq(const SemTerm& a, const SemTerm& b) {
  std::map<std::string, int> ma, mb;
  return detail::alpha_eq(a, b, ma, mb, 0);
}

// ---------------------------------------------------------------------------
// Rendering

enum class TermStyle : std::uint8_t { ascii, unicode, latex };

namespace detail {

inline bool is_const(const SemTerm& t, const char* n) { return t->kind == TermNode::Kind::cnst && t->name == n; }

// [a op b] for the binary logical constants.
inline bool binary_connective(const SemTerm& t, std::string& op, SemTerm& l, SemTerm& r) {
  if (t->kind != TermNode::Kind::app || t->a->kind != TermNode::Kind::app) return false;
  const SemTerm& f = t->a->a;
  if (is_const(f, "and") || is_const(f, "implies")) {
    op = f->name;
    l = t->a->b;
    r = t->b;
    return true;
  }
  if (is_const(f, "gt") && t->a->b->kind == TermNode::Kind::app && is_const(t->a->b->a, "card") &&
      t->b->kind == TermNode::Kind::app && is_const(t->b->a, "card")) {
    op = "gt";
    l = t->a->b->b;
    r = t->b->b;
    return true;
  }
  return false;
}

inline bool quantifier(const SemTerm& t) {
  return t->kind == TermNode::Kind::app && (is_const(t->a, "forall") || is_const(t->a, "exists")) &&
         t->b->kind == TermNode::Kind::lam;
}

struct TermPrinter {
  TermStyle style;

  std::string name(const std::string& n) const {
    if (style == TermStyle::ascii) return n;
    if (n == "iota") return style == TermStyle::unicode ? "ι" : "\\iota";
    if (style == TermStyle::latex) return n.size() == 1 ? n : "\\mathit{" + n + "}";
    return n;
  }

  std::string bracket_body(const SemTerm& t) const {
    std::string op;
    SemTerm l, r;
    if (binary_connective(t, op, l, r)) {
      if (op == "gt") {
        return "|" + print(l) + "| > |" + print(r) + "|";
      }
      std::string sym;
      if (op == "and") sym = style == TermStyle::ascii ? "and" : style == TermStyle::unicode ? "∧" : "\\wedge";
      else sym = style == TermStyle::ascii ? "implies" : style == TermStyle::unicode ? "→" : "\\rightarrow";
      return print(l) + " " + sym + " " + print(r);
    }
    return print(t);
  }

  std::string lam_prefix(const std::string& x) const {
    if (style == TermStyle::ascii) return "lam " + x + ". ";
    return (style == TermStyle::unicode ? "λ" : "\\lambda ") + name(x);
  }

  std::string print(const SemTerm& t) const {
    using K = TermNode::Kind;
    std::string op;
    SemTerm l, r;
    switch (t->kind) {
      case K::var:
      case K::cnst: return name(t->name);
      case K::unit: return "d";
      case K::pair: return (style == TermStyle::latex ? "\\langle " : "<") + print(t->a) + ", " + print(t->b) +
                           (style == TermStyle::latex ? "\\rangle" : ">");
      case K::proj1:
      case K::proj2: {
        std::string p = style == TermStyle::ascii     ? (t->kind == K::proj1 ? "p1 " : "p2 ")
                        : style == TermStyle::unicode ? (t->kind == K::proj1 ? "π₁" : "π₂")
                                                      : (t->kind == K::proj1 ? "\\pi_1 " : "\\pi_2 ");
        return p + operand(t->a);
      }
      case K::lam: {
        std::string body = print(t->a);
        if (style == TermStyle::ascii) return lam_prefix(t->name) + body;
        bool glue = t->a->kind == K::lam || body.front() == '(' || body.front() == '[' || quantifier(t->a);
        return lam_prefix(t->name) + (glue ? "" : ".") + body;
      }
      case K::app: {
        if (quantifier(t)) {
          bool all = t->a->name == "forall";
          std::string q = style == TermStyle::ascii     ? (all ? "forall " : "exists ")
                          : style == TermStyle::unicode ? (all ? "∀" : "∃")
                                                        : (all ? "\\forall " : "\\exists ");
          return q + name(t->b->name) + "[" + bracket_body(t->b->a) + "]";
        }
        if (binary_connective(t, op, l, r)) return "[" + bracket_body(t) + "]";
        std::string f = t->a->kind == K::lam ? "(" + print(t->a) + ")" : print(t->a);
        std::string x = t->b->kind == K::lam ? "(" + print(t->b) + ")" : print(t->b);
        return "(" + f + (style == TermStyle::latex ? "\\ " : " ") + x + ")";
      }
    }
    return "?";
  }

  // Operand of a projection: atoms and bracketed forms stand alone.
  std::string operand(const SemTerm& t) const {
    using K = TermNode::Kind;
    if (t->kind == K::var || t->kind == K::cnst || t->kind == K::unit || t->kind == K::pair || t->kind == K::app)
      return print(t);
    return "(" + print(t) + ")";
  }
};

}  // namespace detail

inline std::string render_term(const SemTerm& t, TermStyle style = TermStyle::ascii) {
  return detail::TermPrinter{style}.print(t);
}

// ---------------------------------------------------------------------------
// Parsing
//
//   term    := 'lam' x '.' term | app
//   app     := prefix prefix*            (left associative)
//   prefix  := ('p1' | 'p2') prefix | atomic
//   atomic  := ident | 'd' | '(' term ')' | '<' term ',' term '>'
//            | '[' body ']' | ('forall' | 'exists') x '[' body ']'
//   body    := '|' term '|' '>' '|' term '|' | app (('and' | 'implies') app)?
//
// Identifiers bound by an enclosing binder, or listed in `free`, are
// variables; all others are constants.

namespace detail {

class TermReader {
 public:
  TermReader(std::string_view s, const std::set<std::string>& free) : s_(s), free_(free) {}

  SemTerm parse() {
    SemTerm t = term();
    ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  const std::set<std::string>& free_;
  std::vector<std::string> bound_;

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }
  char peek() {
    ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }
  std::string peek_ident() {
    ws();
    std::size_t p = pos_;
    if (p >= s_.size() || !ident_start(s_[p])) return {};
    while (p < s_.size() && ident_char(s_[p])) ++p;
    return std::string(s_.substr(pos_, p - pos_));
  }
  std::string ident() {
    std::string id = peek_ident();
    if (id.empty()) fail("expected identifier");
    pos_ += id.size();
    return id;
  }
  bool is_keyword(const std::string& id) const {
    return id == "lam" || id == "p1" || id == "p2" || id == "and" || id == "implies";
  }

  SemTerm binder(const std::function<SemTerm()>& body, std::string& x) {
    x = ident();
    if (is_keyword(x) || x == "d") fail("reserved word used as variable");
    bound_.push_back(x);
    SemTerm b = body();
    bound_.pop_back();
    return b;
  }

  SemTerm term() {
    if (peek_ident() == "lam") {
      pos_ += 3;
      std::string x;
      SemTerm b = binder(
          [&] {
            expect('.');
            return term();
          },
          x);
      return term::lam(x, b);
    }
    return app();
  }

  bool starts_prefix() {
    char c = peek();
    if (c == '(' || c == '<' || c == '[') return true;
    std::string id = peek_ident();
    return !id.empty() && id != "lam" && id != "and" && id != "implies";
  }

  SemTerm app() {
    SemTerm t = prefix();
    while (starts_prefix()) t = term::app(t, prefix());
    // A trailing abstraction is the last argument: f lam x. b
    if (peek_ident() == "lam") t = term::app(t, term());
    return t;
  }

  SemTerm prefix() {
    std::string id = peek_ident();
    if (id == "p1" || id == "p2") {
      pos_ += 2;
      SemTerm x = prefix();
      return id == "p1" ? term::proj1(x) : term::proj2(x);
    }
    return atomic();
  }

  SemTerm body() {
    if (accept('|')) {
      SemTerm l = term();
      expect('|');
      expect('>');
      expect('|');
      SemTerm r = term();
      expect('|');
      return term::app(term::cnst("gt"), term::app(term::cnst("card"), l), term::app(term::cnst("card"), r));
    }
    SemTerm l = term();
    std::string op = peek_ident();
    if (op == "and" || op == "implies") {
      pos_ += op.size();
      return term::app(term::cnst(op), l, term());
    }
    return l;
  }

  SemTerm atomic() {
    if (accept('(')) {
      SemTerm t = term();
      expect(')');
      return t;
    }
    if (accept('<')) {
      SemTerm a = term();
      expect(',');
      SemTerm b = term();
      expect('>');
      return term::pair(a, b);
    }
    if (accept('[')) {
      SemTerm t = body();
      expect(']');
      return t;
    }
    std::size_t at = pos_;
    std::string id = ident();
    if (id == "d") return term::unit();
    if (is_keyword(id)) {
      pos_ = at;
      fail("unexpected '" + id + "'");
    }
    if (id == "forall" || id == "exists") {
      std::size_t save = pos_;
      std::string x = peek_ident();
      if (!x.empty()) {
        pos_ += x.size();
        if (peek() == '[') {
          pos_ = save;
          std::string v;
          SemTerm b = binder(
              [&] {
                expect('[');
                SemTerm inner = body();
                expect(']');
                return inner;
              },
              v);
          return term::app(term::cnst(id), term::lam(v, b));
        }
      }
      pos_ = save;
    }
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == id) return term::var(id);
    if (free_.count(id)) return term::var(id);
    return term::cnst(id);
  }
};

}  // namespace detail

inline SemTerm parse_term(std::string_view text, const std::set<std::string>& free = {}) {
  return detail::TermReader(text, free).parse();
}

// ---------------------------------------------------------------------------
// Typing
//
// Constants outside the environment get one inferred type per name, shared
// by all their occurrences in the term. The logical constants are fixed.

class TermTypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TypeEnv = std::map<std::string, SemType>;

inline const TypeEnv& logical_constants() {
  static const TypeEnv env = [] {
    SemType e = sem_e(), t = sem_t(), et = sem_arrow(e, t);
    return TypeEnv{{"forall", sem_arrow(et, t)},          {"exists", sem_arrow(et, t)},
                   {"and", sem_arrow(t, sem_arrow(t, t))}, {"implies", sem_arrow(t, sem_arrow(t, t))},
                   {"iota", sem_arrow(et, e)},             {"card", sem_arrow(et, e)},
                   {"gt", sem_arrow(e, sem_arrow(e, t))}};
  }();
  return env;
}

class TypeInference {
 public:
  SemType fresh() {
    bind_.push_back(nullptr);
    return sem_meta(static_cast<int>(bind_.size()) - 1);
  }

  SemType resolve(const SemType& s) const {
    using K = SemTypeNode::Kind;
    switch (s->kind) {
      case K::meta: {
        const SemType& b = bind_[static_cast<std::size_t>(s->meta)];
        return b ? resolve(b) : s;
      }
      case K::arrow: return sem_arrow(resolve(s->left), resolve(s->right));
      case K::pair: return sem_pair(resolve(s->left), resolve(s->right));
      default: return s;
    }
  }

  void unify(const SemType& x, const SemType& y, const std::string& where) {
    SemType a = shallow(x), b = shallow(y);
    using K = SemTypeNode::Kind;
    if (a->kind == K::meta && b->kind == K::meta && a->meta == b->meta) return;
    if (a->kind == K::meta) return bind(a->meta, b, where);
    if (b->kind == K::meta) return bind(b->meta, a, where);
    if (a->kind != b->kind) mismatch(a, b, where);
    if (a->kind == K::arrow || a->kind == K::pair) {
      unify(a->left, b->left, where);
      unify(a->right, b->right, where);
    }
  }

  SemType infer(const SemTerm& t, TypeEnv& env) {
    using K = TermNode::Kind;
    switch (t->kind) {
      case K::unit: return sem_unit();
      case K::var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw TermTypeError("unbound variable " + t->name);
        return it->second;
      }
      case K::cnst: {
        if (auto it = env.find(t->name); it != env.end()) return it->second;
        if (auto it = logical_constants().find(t->name); it != logical_constants().end()) return it->second;
        auto [it, fresh_const] = consts_.try_emplace(t->name, nullptr);
        if (fresh_const) it->second = fresh();
        return it->second;
      }
      case K::lam: {
        SemType a = fresh();
        auto saved = env.find(t->name) == env.end() ? std::nullopt : std::optional<SemType>(env[t->name]);
        env[t->name] = a;
        SemType b = infer(t->a, env);
        if (saved) env[t->name] = *saved; else env.erase(t->name);
        return sem_arrow(a, b);
      }
      case K::app: {
        SemType f = infer(t->a, env);
        SemType x = infer(t->b, env);
        SemType r = fresh();
        unify(f, sem_arrow(x, r), "application " + render_term(t));
        return r;
      }
      case K::pair: return sem_pair(infer(t->a, env), infer(t->b, env));
      case K::proj1:
      case K::proj2: {
        SemType p = infer(t->a, env);
        SemType l = fresh(), r = fresh();
        unify(p, sem_pair(l, r), "projection " + render_term(t));
        return t->kind == K::proj1 ? l : r;
      }
    }
    throw TermTypeError("bad term");
  }

  const std::map<std::string, SemType>& constants() const { return consts_; }

 private:
  std::vector<SemType> bind_;
  std::map<std::string, SemType> consts_;

  SemType shallow(SemType s) const {
    while (s->kind == SemTypeNode::Kind::meta && bind_[static_cast<std::size_t>(s->meta)])
      s = bind_[static_cast<std::size_t>(s->meta)];
    return s;
  }
  bool occurs(int m, const SemType& s) const {
    SemType x = shallow(s);
    if (x->kind == SemTypeNode::Kind::meta) return x->meta == m;
    return x->left && (occurs(m, x->left) || occurs(m, x->right));
  }
  void bind(int m, const SemType& s, const std::string& where) {
    if (occurs(m, s)) throw TermTypeError("infinite type in " + where);
    bind_[static_cast<std::size_t>(m)] = s;
  }
  [[noreturn]] void mismatch(const SemType& a, const SemType& b, const std::string& where) const {
    throw TermTypeError("cannot match " + render_sem_type(resolve(a)) + " with " + render_sem_type(resolve(b)) +
                        " in " + where);
  }
};

// Type of `t` under `env`; inference variables left open print as ?n.
inline SemType typecheck(const SemTerm& t, const TypeEnv& env = {}) {
  TypeInference inf;
  TypeEnv e = env;
  return inf.resolve(inf.infer(t, e));
}

// Checks `t` against `want`; throws TermTypeError on failure.
inline void typecheck_against(const SemTerm& t, const SemType& want, const TypeEnv& env = {}) {
  TypeInference inf;
  TypeEnv e = env;
  inf.unify(inf.infer(t, e), want, render_term(t));
}

// ---------------------------------------------------------------------------
// Extraction
//
// Terms are computed bottom-up. Every occurrence of every intermediate
// antecedent carries a label; the term of a node is written over variables
// x<label>. Conclusions are rebuilt with forward_conclusion from the
// relabelled premises so new principal occurrences get fresh labels.

struct OpenTerm {
  Config antecedent;  // labelled copy of the node's antecedent
  SemTerm term;
};

inline std::string label_var(int label) { return "x" + std::to_string(label); }

namespace detail {

class Extractor {
 public:
  OpenTerm run(const ProofPtr& p) {
    std::vector<OpenTerm> sub;
    std::vector<Hypersequent> ps;
    for (const ProofPtr& q : p->premises) {
      sub.push_back(run(q));
      ps.push_back(Hypersequent{sub.back().antecedent, q->conclusion.succedent});
    }
    const int fresh = next_++;
    const RuleMeta& m = p->meta;
    Hypersequent concl = forward_conclusion(p->rule, m, ps, fresh);
    if (!(concl == p->conclusion)) throw RuleError(rule_name(p->rule) + ": conclusion does not follow from premises");
    auto lab = [&](std::size_t premise, const SpanRef& at, int offset = 0) {
      return item_at(ps[premise].antecedent, OccRef{at.path, at.start + offset}).label;
    };
    auto var = [](int l) { return term::var(label_var(l)); };
    SemTerm t;
    switch (p->rule) {
      case Rule::id: t = var(fresh); break;
      case Rule::unit_i_r:
      case Rule::unit_j_r: t = term::unit(); break;
      case Rule::under_l:
      case Rule::over_l:
      case Rule::extract_l:
      case Rule::infix_l:
        t = substitute(sub[1].term, label_var(lab(1, m.site)), term::app(var(fresh), sub[0].term));
        break;
      case Rule::cut: t = substitute(sub[1].term, label_var(lab(1, m.site)), sub[0].term); break;
      case Rule::under_r: t = term::lam(label_var(ps[0].antecedent.front().label), sub[0].term); break;
      case Rule::over_r: t = term::lam(label_var(ps[0].antecedent.back().label), sub[0].term); break;
      case Rule::infix_r: t = term::lam(label_var(ps[0].antecedent.front().label), sub[0].term); break;
      case Rule::extract_r: t = term::lam(label_var(lab(0, m.site)), sub[0].term); break;
      case Rule::product_l: {
        t = substitute(sub[0].term, label_var(lab(0, m.site)), term::proj1(var(fresh)));
        t = substitute(t, label_var(lab(0, m.site, 1)), term::proj2(var(fresh)));
        break;
      }
      case Rule::disc_product_l: {
        const Item& a = item_at(ps[0].antecedent, OccRef{m.site.path, m.site.start});
        int b = a.fillers.at(static_cast<std::size_t>(m.k - 1)).at(0).label;
        t = substitute(sub[0].term, label_var(a.label), term::proj1(var(fresh)));
        t = substitute(t, label_var(b), term::proj2(var(fresh)));
        break;
      }
      case Rule::unit_i_l:
      case Rule::unit_j_l: t = sub[0].term; break;
      case Rule::product_r:
      case Rule::disc_product_r: t = term::pair(sub[0].term, sub[1].term); break;
    }
    return OpenTerm{std::move(concl.antecedent), t};
  }

 private:
  int next_ = 0;
};

}  // namespace detail

// Term of the succedent over variables labelling the antecedent occurrences.
inline OpenTerm extract_open(const ProofPtr& p) { return detail::Extractor().run(p); }

// Antecedent occurrences in pre-order, the order of lexical labelling.
inline std::vector<const Item*> labelled_occurrences(const Config& c) {
  std::vector<const Item*> out;
  std::function<void(const Config&)> walk = [&](const Config& cc) {
    for (const Item& it : cc) {
      if (it.is_occurrence()) out.push_back(&it);
      for (const Config& f : it.fillers) walk(f);
    }
  };
  walk(c);
  return out;
}

// Succedent term of `p` with the antecedent occurrences (pre-order) labelled
// by `labels`. Each label must have the semantic type of its occurrence.
inline SemTerm extract_term(const ProofPtr& p, const std::vector<SemTerm>& labels,
                            const AtomTable& atoms = default_atoms()) {
  OpenTerm o = extract_open(p);
  std::vector<const Item*> occ = labelled_occurrences(o.antecedent);
  if (occ.size() != labels.size())
    throw SemError("labelling has " + std::to_string(labels.size()) + " terms for " + std::to_string(occ.size()) +
                   " occurrences");
  for (std::size_t i = 0; i < occ.size(); ++i) {
    try {
      typecheck_against(labels[i], sem_type(occ[i]->type, atoms));
    } catch (const TermTypeError& e) {
      throw SemError("label " + std::to_string(i + 1) + " for " + occ[i]->type->text() + ": " + e.what());
    }
  }
  // Simultaneous substitution: the label terms are closed, so sequential
  // substitution over distinct variables is equivalent.
  SemTerm t = o.term;
  for (std::size_t i = 0; i < occ.size(); ++i) t = substitute(t, label_var(occ[i]->label), labels[i]);
  return t;
}

// Variables for every occurrence, typed by the homomorphism.
inline TypeEnv open_env(const OpenTerm& o, const AtomTable& atoms = default_atoms()) {
  TypeEnv env;
  for (const Item* it : labelled_occurrences(o.antecedent)) env[label_var(it->label)] = sem_type(it->type, atoms);
  return env;
}

}  // namespace displace

#endif  // DISPLACE_SEMANTICS_HPP

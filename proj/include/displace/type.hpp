// Sorted type formulas of the displacement calculus.
//
// A type is an immutable tree shared through std::shared_ptr<const TypeNode>.
// Sort, weight, hash and the canonical ASCII rendering are computed once at
// construction, so equality and hashing are cheap enough for the prover's
// memo tables.

#ifndef DISPLACE_TYPE_HPP
#define DISPLACE_TYPE_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace displace {

enum class Connective : std::uint8_t {
  atom,
  under,         // A\C
  over,          // C/B
  product,       // A*B
  unit_i,        // I
  infix,         // A!kC
  extract,       // C^kB
  disc_product,  // A(o)kB
  unit_j,        // J
};

class TypeNode;
using Type = std::shared_ptr<const TypeNode>;

enum class Notation : std::uint8_t { text, latex };

class TypeNode {
 public:
  Connective op() const { return op_; }
  const std::string& name() const { return name_; }
  int k() const { return k_; }
  const Type& left() const { return left_; }
  const Type& right() const { return right_; }

  // Derived sort; may be negative for an ill-sorted tree (see validate_type).
  int sort() const { return sort_; }
  int weight() const { return weight_; }
  std::size_t hash() const { return hash_; }
  // Canonical ASCII rendering without outer parentheses.
  const std::string& text() const { return text_; }

  bool is_binary() const {
    return op_ != Connective::atom && op_ != Connective::unit_i && op_ != Connective::unit_j;
  }

  static Type make(Connective op, std::string name, int k, Type left, Type right);

 private:
  TypeNode() = default;

  Connective op_ = Connective::atom;
  std::string name_;
  int k_ = 0;
  Type left_, right_;
  int sort_ = 0;
  int weight_ = 0;
  std::size_t hash_ = 0;
  std::string text_;
};

inline bool same_type(const Type& a, const Type& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->op() != b->op() || a->k() != b->k()) return false;
  if (a->op() == Connective::atom) return a->name() == b->name();
  if (!a->is_binary()) return true;
  return same_type(a->left(), b->left()) && same_type(a->right(), b->right());
}

struct TypeEq {
  bool operator()(const Type& a, const Type& b) const { return same_type(a, b); }
};
struct TypeHash {
  std::size_t operator()(const Type& t) const { return t ? t->hash() : 0; }
};

namespace detail {

inline const char* op_symbol(Connective op) {
  switch (op) {
    case Connective::under: return "\\";
    case Connective::over: return "/";
    case Connective::product: return "*";
    case Connective::infix: return "!";
    case Connective::extract: return "^";
    case Connective::disc_product: return "(o)";
    default: return "";
  }
}

inline bool indexed(Connective op) {
  return op == Connective::infix || op == Connective::extract || op == Connective::disc_product;
}

inline void render_text(const Type& t, bool top, std::string& out) {
  if (!t->is_binary()) {
    out += t->text();
    return;
  }
  if (!top) out += '(';
  render_text(t->left(), false, out);
  out += detail::op_symbol(t->op());
  if (indexed(t->op()) && t->k() != 1) out += std::to_string(t->k());
  render_text(t->right(), false, out);
  if (!top) out += ')';
}

inline std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace detail

inline Type TypeNode::make(Connective op, std::string name, int k, Type left, Type right) {
  auto* node = new TypeNode();
  node->op_ = op;
  node->name_ = std::move(name);
  node->k_ = k;
  node->left_ = std::move(left);
  node->right_ = std::move(right);
  const TypeNode* a = node->left_.get();
  const TypeNode* b = node->right_.get();
  switch (op) {
    case Connective::atom: node->sort_ = 0; break;
    case Connective::unit_i: node->sort_ = 0; break;
    case Connective::unit_j: node->sort_ = 1; break;
    case Connective::under: node->sort_ = b->sort_ - a->sort_; break;
    case Connective::over: node->sort_ = a->sort_ - b->sort_; break;
    case Connective::product: node->sort_ = a->sort_ + b->sort_; break;
    case Connective::infix: node->sort_ = b->sort_ - a->sort_ + 1; break;
    case Connective::extract: node->sort_ = a->sort_ - b->sort_ + 1; break;
    case Connective::disc_product: node->sort_ = a->sort_ + b->sort_ - 1; break;
  }
  node->weight_ = op == Connective::atom ? 0 : 1;
  if (a) node->weight_ += a->weight_;
  if (b) node->weight_ += b->weight_;

  std::size_t h = std::hash<int>{}(static_cast<int>(op) * 131 + k);
  if (op == Connective::atom) h = detail::mix(h, std::hash<std::string>{}(node->name_));
  if (a) h = detail::mix(h, a->hash_);
  if (b) h = detail::mix(h, b->hash_);
  node->hash_ = h;

  Type result(node);
  switch (op) {
    case Connective::atom: node->text_ = node->name_; break;
    case Connective::unit_i: node->text_ = "I"; break;
    case Connective::unit_j: node->text_ = "J"; break;
    default: detail::render_text(result, true, node->text_); break;
  }
  return result;
}

// Constructors, named by connective. Operand order follows the written form:
// under(A, C) is A\C, over(C, B) is C/B, extract(k, C, B) is C^kB.
inline Type atom(std::string name) { return TypeNode::make(Connective::atom, std::move(name), 0, nullptr, nullptr); }
inline Type under(Type a, Type c) { return TypeNode::make(Connective::under, {}, 0, std::move(a), std::move(c)); }
inline Type over(Type c, Type b) { return TypeNode::make(Connective::over, {}, 0, std::move(c), std::move(b)); }
inline Type product(Type a, Type b) { return TypeNode::make(Connective::product, {}, 0, std::move(a), std::move(b)); }
inline Type infix(int k, Type a, Type c) { return TypeNode::make(Connective::infix, {}, k, std::move(a), std::move(c)); }
inline Type extract(int k, Type c, Type b) { return TypeNode::make(Connective::extract, {}, k, std::move(c), std::move(b)); }
inline Type disc_product(int k, Type a, Type b) {
  return TypeNode::make(Connective::disc_product, {}, k, std::move(a), std::move(b));
}
inline Type unit_i() {
  static const Type t = TypeNode::make(Connective::unit_i, {}, 0, nullptr, nullptr);
  return t;
}
inline Type unit_j() {
  static const Type t = TypeNode::make(Connective::unit_j, {}, 0, nullptr, nullptr);
  return t;
}

inline int sort_of_type(const Type& t) { return t->sort(); }
inline int weight_type(const Type& t) { return t->weight(); }

struct SortViolation {
  Type subformula;
  std::string reason;
};

// Checks every subformula against the sort grammar, including the bounds on
// the wrap index. Returns the innermost violation found.
inline std::optional<SortViolation> validate_type(const Type& t) {
  if (!t) return SortViolation{t, "null type"};
  if (t->is_binary()) {
    if (auto v = validate_type(t->left())) return v;
    if (auto v = validate_type(t->right())) return v;
  }
  const int sa = t->left() ? t->left()->sort() : 0;
  const int sb = t->right() ? t->right()->sort() : 0;
  auto fail = [&](std::string why) { return SortViolation{t, t->text() + ": " + why}; };
  switch (t->op()) {
    case Connective::atom:
      if (t->name().empty()) return fail("empty atom name");
      break;
    case Connective::under:
      if (sb < sa) return fail("sort of result must be at least sort of argument");
      break;
    case Connective::over:
      if (sa < sb) return fail("sort of result must be at least sort of argument");
      break;
    case Connective::infix:
      if (sa < 1) return fail("infix argument must have sort >= 1");
      if (sb < sa - 1) return fail("sort of result must be at least sort of argument minus one");
      if (t->k() < 1 || t->k() > sa) return fail("wrap index out of range 1.." + std::to_string(sa));
      break;
    case Connective::extract:
      if (sa < sb) return fail("sort of result must be at least sort of extractee");
      if (t->k() < 1 || t->k() > sa - sb + 1) return fail("wrap index out of range 1.." + std::to_string(sa - sb + 1));
      break;
    case Connective::disc_product:
      if (sa < 1) return fail("discontinuous product needs a left operand of sort >= 1");
      if (t->k() < 1 || t->k() > sa) return fail("wrap index out of range 1.." + std::to_string(sa));
      break;
    default:
      break;
  }
  return std::nullopt;
}

// Every subformula, the type itself included; pre-order.
inline void collect_subformulas(const Type& t, std::vector<Type>& out) {
  out.push_back(t);
  if (t->is_binary()) {
    collect_subformulas(t->left(), out);
    collect_subformulas(t->right(), out);
  }
}

// ---------------------------------------------------------------------------
// Text syntax

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Recursive-descent reader shared by the type, configuration and sequent
// parsers. Binary operators are non-associative and carry no precedence:
// every nested binary subformula must be parenthesised.
class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  std::size_t pos() const { return pos_; }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool lookahead(std::string_view s) {
    skip_ws();
    return src_.substr(pos_, s.size()) == s;
  }
  bool accept(std::string_view s) {
    if (!lookahead(s)) return false;
    pos_ += s.size();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  int read_index() {
    int k = 0;
    bool any = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      k = k * 10 + (src_[pos_] - '0');
      ++pos_;
      any = true;
    }
    return any ? k : 1;
  }

  std::string read_identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
        ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(src_.substr(start, pos_ - start));
  }

  Type primary() {
    if (accept("(")) {
      Type t = type_expr();
      expect(")");
      return t;
    }
    std::string id = read_identifier();
    if (id == "I") return unit_i();
    if (id == "J") return unit_j();
    return atom(std::move(id));
  }

  Type type_expr() {
    Type lhs = primary();
    skip_ws();
    Connective op;
    if (accept("\\")) {
      op = Connective::under;
    } else if (accept("/")) {
      op = Connective::over;
    } else if (accept("*")) {
      op = Connective::product;
    } else if (accept("^")) {
      op = Connective::extract;
    } else if (accept("!")) {
      op = Connective::infix;
    } else if (accept("(o)")) {
      op = Connective::disc_product;
    } else {
      return lhs;
    }
    int k = indexed(op) ? read_index() : 0;
    Type rhs = primary();
    switch (op) {
      case Connective::under: return under(lhs, rhs);
      case Connective::over: return over(lhs, rhs);
      case Connective::product: return product(lhs, rhs);
      case Connective::extract: return extract(k, lhs, rhs);
      case Connective::infix: return infix(k, lhs, rhs);
      default: return disc_product(k, lhs, rhs);
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses and validates a type. Throws SyntaxError or SortError.
inline Type parse_type(std::string_view text) {
  detail::Reader r(text);
  Type t = r.type_expr();
  if (!r.at_end()) r.fail("trailing input after type");
  if (auto v = validate_type(t)) throw SortError(v->reason);
  return t;
}

namespace detail {

inline std::string latex_atom(const std::string& name) {
  if (name.size() == 1) return name;
  return "{\\it " + name + "}";
}

inline void render_latex(const Type& t, bool top, std::string& out) {
  switch (t->op()) {
    case Connective::atom: out += latex_atom(t->name()); return;
    case Connective::unit_i: out += "I"; return;
    case Connective::unit_j: out += "J"; return;
    default: break;
  }
  if (!top) out += '(';
  render_latex(t->left(), false, out);
  auto sub = [&]() { return t->k() == 1 ? std::string() : "_{" + std::to_string(t->k()) + "}"; };
  switch (t->op()) {
    case Connective::under: out += "\\backslash "; break;
    case Connective::over: out += "/"; break;
    case Connective::product: out += "{\\bullet}"; break;
    case Connective::infix: out += "{\\downarrow" + sub() + "}"; break;
    case Connective::extract: out += "{\\uparrow" + sub() + "}"; break;
    case Connective::disc_product: out += "{\\odot" + sub() + "}"; break;
    default: break;
  }
  render_latex(t->right(), false, out);
  if (!top) out += ')';
}

}  // namespace detail

inline std::string render_type(const Type& t, Notation n = Notation::text) {
  if (n == Notation::text) return t->text();
  std::string out;
  detail::render_latex(t, true, out);
  return out;
}

}  // namespace displace

#endif  // DISPLACE_TYPE_HPP

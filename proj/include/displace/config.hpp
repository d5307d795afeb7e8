// Hyperconfigurations, hypersequents, weights and the wrap operations.

#ifndef DISPLACE_CONFIG_HPP
#define DISPLACE_CONFIG_HPP

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "displace/type.hpp"

namespace displace {

inline constexpr int no_label = -1;

struct Item;
// A configuration is a sequence of items; the empty sequence is Lambda.
using Config = std::vector<Item>;

struct Item {
  enum class Kind : std::uint8_t { separator, leaf, hyper };

  Kind kind = Kind::separator;
  Type type;                    // null for separators
  std::vector<Config> fillers;  // one per separator of `type` when kind == hyper
  // Occurrence tag used by semantic extraction and proof surgery. Not part of
  // structural identity.
  int label = no_label;

  static Item separator(int label = no_label) {
    Item it;
    it.label = label;
    return it;
  }
  static Item leaf(Type t, int label = no_label) {
    Item it;
    it.kind = Kind::leaf;
    it.type = std::move(t);
    it.label = label;
    return it;
  }
  static Item hyper(Type t, std::vector<Config> fillers, int label = no_label) {
    Item it;
    it.kind = Kind::hyper;
    it.type = std::move(t);
    it.fillers = std::move(fillers);
    it.label = label;
    return it;
  }
  // Leaf for sort-0 types, hyperleaf otherwise.
  static Item occurrence(Type t, std::vector<Config> fillers, int label = no_label) {
    if (t->sort() == 0) return leaf(std::move(t), label);
    return hyper(std::move(t), std::move(fillers), label);
  }

  bool is_separator() const { return kind == Kind::separator; }
  bool is_occurrence() const { return kind != Kind::separator; }

  friend bool operator==(const Item& a, const Item& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::separator) return true;
    return same_type(a.type, b.type) && a.fillers == b.fillers;
  }
};

struct Hypersequent {
  Config antecedent;
  Type succedent;

  friend bool operator==(const Hypersequent& a, const Hypersequent& b) {
    return same_type(a.succedent, b.succedent) && a.antecedent == b.antecedent;
  }
};

// ---------------------------------------------------------------------------
// Sort and weight

inline int sort_of(const Config& c);

inline int sort_of(const Item& it) {
  switch (it.kind) {
    case Item::Kind::separator: return 1;
    case Item::Kind::leaf: return 0;
    case Item::Kind::hyper: {
      int s = 0;
      for (const auto& f : it.fillers) s += sort_of(f);
      return s;
    }
  }
  return 0;
}

inline int sort_of(const Config& c) {
  int s = 0;
  for (const auto& it : c) s += sort_of(it);
  return s;
}

inline int weight_config(const Config& c);

inline int weight_item(const Item& it) {
  if (it.is_separator()) return 0;
  int w = it.type->weight();
  for (const auto& f : it.fillers) w += weight_config(f);
  return w;
}

inline int weight_config(const Config& c) {
  int w = 0;
  for (const auto& it : c) w += weight_item(it);
  return w;
}

inline int total_weight(const Hypersequent& s) { return weight_config(s.antecedent) + s.succedent->weight(); }

// ---------------------------------------------------------------------------
// Vector, wrap and generalized wrap

inline Config separator_config() { return Config{Item::separator()}; }

inline Item vector_item(const Type& t, int label = no_label) {
  std::vector<Config> fillers(static_cast<std::size_t>(t->sort()), separator_config());
  return Item::occurrence(t, std::move(fillers), label);
}

inline Config vector_of(const Type& t) { return Config{vector_item(t)}; }

inline bool is_vector_of(const Item& it, const Type& t) {
  if (!it.is_occurrence() || !same_type(it.type, t)) return false;
  for (const auto& f : it.fillers)
    if (f.size() != 1 || !f[0].is_separator()) return false;
  return true;
}

namespace detail {

inline void gen_wrap_into(const Config& d, std::span<const Config> gs, std::size_t& next, Config& out) {
  for (const auto& it : d) {
    switch (it.kind) {
      case Item::Kind::separator: {
        const Config& g = gs[next++];
        out.insert(out.end(), g.begin(), g.end());
        break;
      }
      case Item::Kind::leaf:
        out.push_back(it);
        break;
      case Item::Kind::hyper: {
        Item copy;
        copy.kind = Item::Kind::hyper;
        copy.type = it.type;
        copy.label = it.label;
        copy.fillers.reserve(it.fillers.size());
        for (const auto& f : it.fillers) {
          Config nf;
          gen_wrap_into(f, gs, next, nf);
          copy.fillers.push_back(std::move(nf));
        }
        out.push_back(std::move(copy));
        break;
      }
    }
  }
}

}  // namespace detail

// Simultaneously replaces the successive separators of d by gs[0], gs[1], ...
// Separators are numbered in flattened left-to-right order, descending into
// hyperleaf fillers in filler order.
inline Config gen_wrap(const Config& d, std::span<const Config> gs) {
  if (static_cast<int>(gs.size()) != sort_of(d))
    throw std::invalid_argument("gen_wrap: expected " + std::to_string(sort_of(d)) + " fillers, got " +
                                std::to_string(gs.size()));
  Config out;
  std::size_t next = 0;
  detail::gen_wrap_into(d, gs, next, out);
  return out;
}

inline Config gen_wrap(const Config& d, const std::vector<Config>& gs) {
  return gen_wrap(d, std::span<const Config>(gs.data(), gs.size()));
}

// Replaces the k-th separator (1-based) of d by g.
inline Config wrap_at(const Config& d, int k, const Config& g) {
  const int s = sort_of(d);
  if (k < 1 || k > s)
    throw std::out_of_range("wrap_at: separator " + std::to_string(k) + " of configuration of sort " +
                            std::to_string(s));
  std::vector<Config> gs(static_cast<std::size_t>(s), separator_config());
  gs[static_cast<std::size_t>(k - 1)] = g;
  return gen_wrap(d, gs);
}

// ---------------------------------------------------------------------------
// Occurrence traversal

// Visits every leaf/hyperleaf in pre-order: an item before its fillers.
template <class F>
void for_each_occurrence(const Config& c, F&& f) {
  for (const auto& it : c) {
    if (!it.is_occurrence()) continue;
    f(it);
    for (const auto& fl : it.fillers) for_each_occurrence(fl, f);
  }
}

inline std::vector<Type> occurrence_types(const Config& c) {
  std::vector<Type> out;
  for_each_occurrence(c, [&](const Item& it) { out.push_back(it.type); });
  return out;
}

inline bool config_well_formed(const Config& c, std::string* why = nullptr) {
  for (const auto& it : c) {
    if (it.is_separator()) continue;
    if (auto v = validate_type(it.type)) {
      if (why) *why = v->reason;
      return false;
    }
    if (it.kind == Item::Kind::leaf && it.type->sort() != 0) {
      if (why) *why = "leaf " + it.type->text() + " has nonzero sort";
      return false;
    }
    if (it.kind == Item::Kind::hyper && (it.type->sort() < 1 || static_cast<int>(it.fillers.size()) != it.type->sort())) {
      if (why) *why = "hyperleaf " + it.type->text() + " has wrong filler count";
      return false;
    }
    for (const auto& f : it.fillers)
      if (!config_well_formed(f, why)) return false;
  }
  return true;
}

inline bool sequent_well_formed(const Hypersequent& s, std::string* why = nullptr) {
  if (!s.succedent) {
    if (why) *why = "missing succedent";
    return false;
  }
  if (auto v = validate_type(s.succedent)) {
    if (why) *why = v->reason;
    return false;
  }
  if (!config_well_formed(s.antecedent, why)) return false;
  if (sort_of(s.antecedent) != s.succedent->sort()) {
    if (why)
      *why = "antecedent sort " + std::to_string(sort_of(s.antecedent)) + " differs from succedent sort " +
             std::to_string(s.succedent->sort());
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rendering

inline void render_config_into(const Config& c, Notation n, bool top, std::string& out);

inline void render_item_into(const Item& it, Notation n, std::string& out) {
  if (it.is_separator()) {
    out += n == Notation::latex ? "[\\;]" : "[]";
    return;
  }
  out += render_type(it.type, n);
  if (it.kind == Item::Kind::hyper) {
    out += n == Notation::latex ? "\\{" : "{";
    for (std::size_t i = 0; i < it.fillers.size(); ++i) {
      if (i) out += " : ";
      render_config_into(it.fillers[i], n, false, out);
    }
    out += n == Notation::latex ? "\\}" : "}";
  }
}

inline void render_config_into(const Config& c, Notation n, bool top, std::string& out) {
  if (c.empty()) {
    if (n == Notation::text) out += "0";
    else if (!top) out += "\\Lambda";
    return;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    render_item_into(c[i], n, out);
  }
}

inline std::string render_config(const Config& c, Notation n = Notation::text) {
  std::string out;
  render_config_into(c, n, true, out);
  return out;
}

inline std::string render_sequent(const Hypersequent& s, Notation n = Notation::text) {
  std::string out;
  render_config_into(s.antecedent, n, true, out);
  if (n == Notation::latex) {
    out += s.antecedent.empty() ? "\\Rightarrow\\ " : "\\ \\Rightarrow\\ ";
  } else {
    out += " => ";
  }
  out += render_type(s.succedent, n);
  return out;
}

// Compact structural key for memo tables.
inline void config_key_into(const Config& c, std::string& out) {
  for (const auto& it : c) {
    if (it.is_separator()) {
      out += '#';
    } else {
      out += '(';
      out += it.type->text();
      for (const auto& f : it.fillers) {
        out += '{';
        config_key_into(f, out);
        out += '}';
      }
      out += ')';
    }
  }
}

inline std::string sequent_key(const Hypersequent& s) {
  std::string out;
  out.reserve(64);
  config_key_into(s.antecedent, out);
  out += '>';
  out += s.succedent->text();
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline Config parse_config_items(Reader& r, bool in_filler);

inline Item parse_item(Reader& r) {
  if (r.accept("[]")) return Item::separator();
  std::size_t at = r.pos();
  Type t = r.type_expr();
  if (auto v = validate_type(t)) throw SortError(v->reason);
  if (r.accept("{")) {
    std::vector<Config> fillers;
    fillers.push_back(parse_config_items(r, true));
    while (r.accept(":")) fillers.push_back(parse_config_items(r, true));
    r.expect("}");
    if (static_cast<int>(fillers.size()) != t->sort())
      throw SyntaxError("hyperleaf " + t->text() + " needs " + std::to_string(t->sort()) + " fillers", at);
    return Item::hyper(t, std::move(fillers));
  }
  if (t->sort() != 0) return vector_item(t);
  return Item::leaf(t);
}

inline Config parse_config_items(Reader& r, bool in_filler) {
  Config c;
  char p = r.peek();
  if (p == '0') {
    r.accept("0");
    return c;
  }
  if (in_filler && (p == ':' || p == '}')) return c;
  if (!in_filler && (r.lookahead("=>") || r.at_end())) return c;
  c.push_back(parse_item(r));
  while (r.accept(",")) c.push_back(parse_item(r));
  return c;
}

}  // namespace detail

// Parses a configuration. A bare type of nonzero sort denotes its vector.
inline Config parse_config(std::string_view text) {
  detail::Reader r(text);
  Config c = detail::parse_config_items(r, false);
  if (!r.at_end()) r.fail("trailing input after configuration");
  return c;
}

inline Hypersequent parse_sequent(std::string_view text) {
  detail::Reader r(text);
  Hypersequent s;
  s.antecedent = detail::parse_config_items(r, false);
  r.expect("=>");
  std::size_t at = r.pos();
  s.succedent = r.type_expr();
  if (!r.at_end()) r.fail("trailing input after succedent");
  if (auto v = validate_type(s.succedent)) throw SortError(v->reason);
  if (sort_of(s.antecedent) != s.succedent->sort())
    throw SortError("antecedent of sort " + std::to_string(sort_of(s.antecedent)) + " but succedent " +
                    s.succedent->text() + " of sort " + std::to_string(s.succedent->sort()) + " (at position " +
                    std::to_string(at) + ")");
  return s;
}

}  // namespace displace

#endif  // DISPLACE_CONFIG_HPP

// Spans, occurrences and extractions over hyperconfigurations.

#ifndef DISPLACE_MATCHER_HPP
#define DISPLACE_MATCHER_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "displace/config.hpp"

namespace displace {

// Address of a nesting position: a sequence of (item index, filler index)
// steps from the top level. The empty path is the top level itself.
using Path = std::vector<std::pair<int, int>>;

struct SpanRef {
  Path path;
  int start = 0;
  int end = 0;  // start == end is an empty span

  bool empty() const { return start == end; }
  friend bool operator==(const SpanRef&, const SpanRef&) = default;
};

struct OccRef {
  Path path;
  int index = 0;

  SpanRef span() const { return SpanRef{path, index, index + 1}; }
  friend bool operator==(const OccRef&, const OccRef&) = default;
};

struct Extraction {
  Config gamma;
  std::vector<Config> thetas;
};

struct Occurrence {
  OccRef at;
  Type type;
  std::vector<Config> fillers;
};

class AddressError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline std::string path_text(const Path& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p[i].first) + ":" + std::to_string(p[i].second);
  }
  return out + "]";
}

inline std::string span_text(const SpanRef& s) {
  return path_text(s.path) + "(" + std::to_string(s.start) + "," + std::to_string(s.end) + ")";
}

// ---------------------------------------------------------------------------
// Address resolution

inline const Config& level_at(const Config& c, const Path& p) {
  const Config* cur = &c;
  for (auto [item, filler] : p) {
    if (item < 0 || item >= static_cast<int>(cur->size())) throw AddressError("path item index out of range");
    const Item& it = (*cur)[static_cast<std::size_t>(item)];
    if (filler < 0 || filler >= static_cast<int>(it.fillers.size())) throw AddressError("path filler index out of range");
    cur = &it.fillers[static_cast<std::size_t>(filler)];
  }
  return *cur;
}

inline Config& level_at(Config& c, const Path& p) {
  return const_cast<Config&>(level_at(static_cast<const Config&>(c), p));
}

inline const Item& item_at(const Config& c, const OccRef& o) {
  const Config& lvl = level_at(c, o.path);
  if (o.index < 0 || o.index >= static_cast<int>(lvl.size())) throw AddressError("item index out of range");
  return lvl[static_cast<std::size_t>(o.index)];
}

inline Config slice(const Config& c, const SpanRef& s) {
  const Config& lvl = level_at(c, s.path);
  if (s.start < 0 || s.start > s.end || s.end > static_cast<int>(lvl.size())) throw AddressError("span out of range");
  return Config(lvl.begin() + s.start, lvl.begin() + s.end);
}

// Splices `with` in place of the span; everything else is untouched.
inline Config replace(const Config& c, const SpanRef& s, const Config& with) {
  Config out = c;
  Config& lvl = level_at(out, s.path);
  if (s.start < 0 || s.start > s.end || s.end > static_cast<int>(lvl.size())) throw AddressError("span out of range");
  lvl.erase(lvl.begin() + s.start, lvl.begin() + s.end);
  lvl.insert(lvl.begin() + s.start, with.begin(), with.end());
  return out;
}

inline Config replace(const Config& c, const OccRef& o, const Config& with) { return replace(c, o.span(), with); }

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

inline void levels_into(const Config& c, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Item& it = c[i];
    for (std::size_t f = 0; f < it.fillers.size(); ++f) {
      cur.emplace_back(static_cast<int>(i), static_cast<int>(f));
      levels_into(it.fillers[f], cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

// Every nesting position, top level first, then fillers in document order.
inline std::vector<Path> enumerate_levels(const Config& c) {
  std::vector<Path> out;
  Path cur;
  detail::levels_into(c, cur, out);
  return out;
}

// All contiguous spans at every nesting position. Within a level: by start,
// then by length (the empty span at each gap comes first).
inline std::vector<SpanRef> enumerate_spans(const Config& c) {
  std::vector<SpanRef> out;
  for (const Path& p : enumerate_levels(c)) {
    const int n = static_cast<int>(level_at(c, p).size());
    for (int s = 0; s <= n; ++s)
      for (int e = s; e <= n; ++e) out.push_back(SpanRef{p, s, e});
  }
  return out;
}

namespace detail {

inline void occurrences_into(const Config& c, const std::function<bool(const Type&)>& pred, Path& cur,
                             std::vector<Occurrence>& out) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Item& it = c[i];
    if (!it.is_occurrence()) continue;
    if (pred(it.type)) out.push_back(Occurrence{OccRef{cur, static_cast<int>(i)}, it.type, it.fillers});
    for (std::size_t f = 0; f < it.fillers.size(); ++f) {
      cur.emplace_back(static_cast<int>(i), static_cast<int>(f));
      occurrences_into(it.fillers[f], pred, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

// Leaves and hyperleaves satisfying pred, in pre-order.
inline std::vector<Occurrence> occurrences(const Config& c, const std::function<bool(const Type&)>& pred) {
  std::vector<Occurrence> out;
  Path cur;
  detail::occurrences_into(c, pred, cur, out);
  return out;
}

inline std::vector<Occurrence> occurrences(const Config& c) {
  return occurrences(c, [](const Type&) { return true; });
}

// ---------------------------------------------------------------------------
// Extraction

namespace detail {

struct Decomp {
  Config gamma;
  std::vector<Config> thetas;
};

inline bool kept_separator(const Item& it, int keep_label) {
  return it.is_separator() && keep_label != no_label && it.label == keep_label;
}

inline bool contains_kept(const Item& it, int keep_label) {
  if (keep_label == no_label) return false;
  if (kept_separator(it, keep_label)) return true;
  for (const Config& f : it.fillers)
    for (const Item& sub : f)
      if (contains_kept(sub, keep_label)) return true;
  return false;
}

inline std::vector<Decomp> decompose(const Config& lvl, std::size_t pos, int budget, int keep_label);

// Decompositions of an item kept in gamma (not inside any piece).
inline std::vector<Decomp> keep_item(const Item& it, int budget, int keep_label) {
  if (it.is_separator()) {
    if (!kept_separator(it, keep_label)) return {};
    return {Decomp{Config{it}, {}}};
  }
  if (it.kind == Item::Kind::leaf) return {Decomp{Config{it}, {}}};
  // Hyperleaf: combine decompositions of every filler.
  std::vector<std::pair<std::vector<Config>, std::vector<Config>>> partial{{{}, {}}};
  for (const Config& f : it.fillers) {
    std::vector<std::pair<std::vector<Config>, std::vector<Config>>> next;
    for (const auto& [fills, thetas] : partial) {
      int left = budget - static_cast<int>(thetas.size());
      for (Decomp& d : decompose(f, 0, left, keep_label)) {
        auto nf = fills;
        nf.push_back(std::move(d.gamma));
        auto nt = thetas;
        nt.insert(nt.end(), std::make_move_iterator(d.thetas.begin()), std::make_move_iterator(d.thetas.end()));
        next.emplace_back(std::move(nf), std::move(nt));
      }
    }
    partial = std::move(next);
  }
  std::vector<Decomp> out;
  out.reserve(partial.size());
  for (auto& [fills, thetas] : partial) {
    Item copy = it;
    copy.fillers = std::move(fills);
    out.push_back(Decomp{Config{std::move(copy)}, std::move(thetas)});
  }
  return out;
}

inline void append(Decomp& into, const Decomp& tail) {
  into.gamma.insert(into.gamma.end(), tail.gamma.begin(), tail.gamma.end());
  into.thetas.insert(into.thetas.end(), tail.thetas.begin(), tail.thetas.end());
}

// All ways to split lvl[pos..] into kept material and at most `budget`
// pieces. Each piece is a contiguous run of siblings (possibly empty) that
// becomes one separator of gamma.
inline std::vector<Decomp> decompose(const Config& lvl, std::size_t pos, int budget, int keep_label) {
  std::vector<Decomp> out;
  for (int e = 0; e <= budget; ++e) {
    Decomp head;
    head.gamma.assign(static_cast<std::size_t>(e), Item::separator());
    head.thetas.assign(static_cast<std::size_t>(e), Config{});
    int left = budget - e;
    if (pos == lvl.size()) {
      out.push_back(std::move(head));
      continue;
    }
    // Nonempty piece starting here.
    if (left >= 1) {
      for (std::size_t q = pos + 1; q <= lvl.size(); ++q) {
        if (contains_kept(lvl[q - 1], keep_label)) break;
        for (const Decomp& tail : decompose(lvl, q, left - 1, keep_label)) {
          Decomp d = head;
          d.gamma.push_back(Item::separator());
          d.thetas.emplace_back(lvl.begin() + static_cast<std::ptrdiff_t>(pos),
                                lvl.begin() + static_cast<std::ptrdiff_t>(q));
          append(d, tail);
          out.push_back(std::move(d));
        }
      }
    }
    // Item kept.
    for (const Decomp& kept : keep_item(lvl[pos], left, keep_label)) {
      int rest = left - static_cast<int>(kept.thetas.size());
      for (const Decomp& tail : decompose(lvl, pos + 1, rest, keep_label)) {
        Decomp d = head;
        append(d, kept);
        append(d, tail);
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

}  // namespace detail

// All (gamma, thetas) with |thetas| = i and gen_wrap(gamma, thetas) = c.
// Pieces are disjoint spans in document order at any nesting position; every
// separator of c lies inside a piece. A separator labelled `keep_label` is
// instead kept in gamma and may not lie inside a piece.
inline std::vector<Extraction> extract(const Config& c, int i, int keep_label = no_label) {
  std::vector<Extraction> out;
  if (i < 0) return out;
  for (detail::Decomp& d : detail::decompose(c, 0, i, keep_label)) {
    if (static_cast<int>(d.thetas.size()) != i) continue;
    out.push_back(Extraction{std::move(d.gamma), std::move(d.thetas)});
  }
  return out;
}

}  // namespace displace

#endif  // DISPLACE_MATCHER_HPP

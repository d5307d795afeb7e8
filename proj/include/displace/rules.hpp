// Forward application of rule schemas: conclusion from premises and metadata.
//
// This is the reference reading of each rule used by the checker, semantic
// extraction and cut elimination. It shares no code with backward search
// beyond the configuration primitives.

#ifndef DISPLACE_RULES_HPP
#define DISPLACE_RULES_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "displace/config.hpp"
#include "displace/matcher.hpp"
#include "displace/proof.hpp"

namespace displace {

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int marker_label = -2;

namespace detail {

inline void find_label_into(const Config& c, int label, Path& cur, std::optional<OccRef>& out) {
  for (std::size_t i = 0; i < c.size() && !out; ++i) {
    if (c[i].label == label) {
      out = OccRef{cur, static_cast<int>(i)};
      return;
    }
    for (std::size_t f = 0; f < c[i].fillers.size() && !out; ++f) {
      cur.emplace_back(static_cast<int>(i), static_cast<int>(f));
      find_label_into(c[i].fillers[f], label, cur, out);
      cur.pop_back();
    }
  }
}

inline void separator_index_into(const Config& c, int label, int& count, int& found) {
  for (const Item& it : c) {
    if (found) return;
    if (it.is_separator()) {
      ++count;
      if (it.label == label) {
        found = count;
        return;
      }
    }
    for (const Config& f : it.fillers) separator_index_into(f, label, count, found);
  }
}

inline void nth_separator_into(const Config& c, int k, Path& cur, int& count, std::optional<OccRef>& out) {
  for (std::size_t i = 0; i < c.size() && !out; ++i) {
    if (c[i].is_separator() && ++count == k) {
      out = OccRef{cur, static_cast<int>(i)};
      return;
    }
    for (std::size_t f = 0; f < c[i].fillers.size() && !out; ++f) {
      cur.emplace_back(static_cast<int>(i), static_cast<int>(f));
      nth_separator_into(c[i].fillers[f], k, cur, count, out);
      cur.pop_back();
    }
  }
}

}  // namespace detail

// First item (pre-order) carrying `label`.
inline std::optional<OccRef> find_label(const Config& c, int label) {
  std::optional<OccRef> out;
  Path cur;
  detail::find_label_into(c, label, cur, out);
  return out;
}

// 1-based position among all separators of the separator labelled `label`,
// 0 if absent.
inline int separator_index(const Config& c, int label) {
  int count = 0, found = 0;
  detail::separator_index_into(c, label, count, found);
  return found;
}

inline std::optional<OccRef> nth_separator(const Config& c, int k) {
  std::optional<OccRef> out;
  Path cur;
  int count = 0;
  detail::nth_separator_into(c, k, cur, count, out);
  return out;
}

inline Config clear_label(Config c, int label) {
  for (Item& it : c) {
    if (it.label == label) it.label = no_label;
    for (Config& f : it.fillers) f = clear_label(std::move(f), label);
  }
  return c;
}

namespace detail {

[[noreturn]] inline void rule_fail(Rule r, const std::string& what) { throw RuleError(rule_name(r) + ": " + what); }

inline void expect_op(Rule r, const Type& t, Connective op) {
  if (!t || t->op() != op) rule_fail(r, "principal type " + (t ? t->text() : std::string("<none>")) + " has wrong shape");
}

inline void expect_same(Rule r, const Type& got, const Type& want, const char* what) {
  if (!same_type(got, want)) rule_fail(r, std::string(what) + " is " + got->text() + ", expected " + want->text());
}

inline const Item& site_item(Rule r, const Config& c, const SpanRef& site, const Type& want) {
  if (site.end != site.start + 1) rule_fail(r, "site must address one item");
  const Item* it = nullptr;
  try {
    it = &item_at(c, OccRef{site.path, site.start});
  } catch (const AddressError& e) {
    rule_fail(r, std::string("bad site: ") + e.what());
  }
  if (!it->is_occurrence()) rule_fail(r, "site addresses a separator");
  expect_same(r, it->type, want, "site type");
  if (static_cast<int>(it->fillers.size()) != want->sort() || (want->sort() == 0) != (it->kind == Item::Kind::leaf))
    rule_fail(r, "site item has wrong filler count");
  return *it;
}

inline std::vector<Config> sub(const std::vector<Config>& v, std::size_t from, std::size_t to) {
  return std::vector<Config>(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to));
}

inline Config cat(Config a, const Config& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Config checked_gen_wrap(Rule r, const Config& d, const std::vector<Config>& gs) {
  if (static_cast<int>(gs.size()) != sort_of(d)) rule_fail(r, "generalized wrap arity mismatch");
  return gen_wrap(d, gs);
}

}  // namespace detail

// Computes the conclusion of a rule instance. New principal occurrences carry
// `fresh_label`. Throws RuleError when premises and metadata do not fit the
// schema.
inline Hypersequent forward_conclusion(Rule r, const RuleMeta& m, std::span<const Hypersequent> ps,
                                       int fresh_label = no_label) {
  using namespace detail;
  if (static_cast<int>(ps.size()) != rule_arity(r))
    rule_fail(r, "expected " + std::to_string(rule_arity(r)) + " premises, got " + std::to_string(ps.size()));
  const Type& P = m.principal;
  if (!P) rule_fail(r, "missing principal type");
  if (validate_type(P)) rule_fail(r, "principal type " + P->text() + " is not well sorted");
  if (rule_indexed(r) && P->k() != m.k) rule_fail(r, "index k does not match principal type");

  switch (r) {
    case Rule::id: {
      Config ant{vector_item(P, fresh_label)};
      return {ant, P};
    }
    case Rule::unit_i_r:
      expect_op(r, P, Connective::unit_i);
      return {Config{}, P};
    case Rule::unit_j_r:
      expect_op(r, P, Connective::unit_j);
      return {Config{Item::separator()}, P};

    case Rule::under_r: {
      expect_op(r, P, Connective::under);
      expect_same(r, ps[0].succedent, P->right(), "premise succedent");
      const Config& a = ps[0].antecedent;
      if (a.empty() || !is_vector_of(a.front(), P->left())) rule_fail(r, "premise does not begin with vector of " + P->left()->text());
      return {Config(a.begin() + 1, a.end()), P};
    }
    case Rule::over_r: {
      expect_op(r, P, Connective::over);
      expect_same(r, ps[0].succedent, P->left(), "premise succedent");
      const Config& a = ps[0].antecedent;
      if (a.empty() || !is_vector_of(a.back(), P->right())) rule_fail(r, "premise does not end with vector of " + P->right()->text());
      return {Config(a.begin(), a.end() - 1), P};
    }
    case Rule::infix_r: {
      expect_op(r, P, Connective::infix);
      expect_same(r, ps[0].succedent, P->right(), "premise succedent");
      const Config& a = ps[0].antecedent;
      if (a.size() != 1 || !a[0].is_occurrence()) rule_fail(r, "premise antecedent is not a wrapped vector");
      expect_same(r, a[0].type, P->left(), "wrapped type");
      const auto& fs = a[0].fillers;
      if (static_cast<int>(fs.size()) != P->left()->sort() || m.k < 1 || m.k > static_cast<int>(fs.size()))
        rule_fail(r, "wrapped vector has wrong arity");
      for (std::size_t i = 0; i < fs.size(); ++i)
        if (static_cast<int>(i) != m.k - 1 && !(fs[i].size() == 1 && fs[i][0].is_separator()))
          rule_fail(r, "filler " + std::to_string(i + 1) + " of the wrapped vector is not a separator");
      return {fs[static_cast<std::size_t>(m.k - 1)], P};
    }
    case Rule::extract_r: {
      expect_op(r, P, Connective::extract);
      expect_same(r, ps[0].succedent, P->left(), "premise succedent");
      const Item& b = site_item(r, ps[0].antecedent, m.site, P->right());
      if (!is_vector_of(b, P->right())) rule_fail(r, "site is not a vector of " + P->right()->text());
      Config c = replace(ps[0].antecedent, m.site, Config{Item::separator(marker_label)});
      if (separator_index(c, marker_label) != m.k) rule_fail(r, "site is not the k-th separator of the conclusion");
      return {clear_label(std::move(c), marker_label), P};
    }
    case Rule::product_r: {
      expect_op(r, P, Connective::product);
      expect_same(r, ps[0].succedent, P->left(), "first premise succedent");
      expect_same(r, ps[1].succedent, P->right(), "second premise succedent");
      return {cat(ps[0].antecedent, ps[1].antecedent), P};
    }
    case Rule::disc_product_r: {
      expect_op(r, P, Connective::disc_product);
      expect_same(r, ps[0].succedent, P->left(), "first premise succedent");
      expect_same(r, ps[1].succedent, P->right(), "second premise succedent");
      if (m.k < 1 || m.k > sort_of(ps[0].antecedent)) rule_fail(r, "k exceeds sort of first premise");
      return {wrap_at(ps[0].antecedent, m.k, ps[1].antecedent), P};
    }

    case Rule::under_l: {
      expect_op(r, P, Connective::under);
      const Type &A = P->left(), &C = P->right();
      expect_same(r, ps[0].succedent, A, "first premise succedent");
      const Item& c = site_item(r, ps[1].antecedent, m.site, C);
      const auto sa = static_cast<std::size_t>(A->sort());
      Config moved = checked_gen_wrap(r, ps[0].antecedent, sub(c.fillers, 0, sa));
      moved.push_back(Item::occurrence(P, sub(c.fillers, sa, c.fillers.size()), fresh_label));
      return {replace(ps[1].antecedent, m.site, moved), ps[1].succedent};
    }
    case Rule::over_l: {
      expect_op(r, P, Connective::over);
      const Type &C = P->left(), &B = P->right();
      expect_same(r, ps[0].succedent, B, "first premise succedent");
      const Item& c = site_item(r, ps[1].antecedent, m.site, C);
      const auto sf = static_cast<std::size_t>(P->sort());
      Config moved{Item::occurrence(P, sub(c.fillers, 0, sf), fresh_label)};
      moved = cat(std::move(moved), checked_gen_wrap(r, ps[0].antecedent, sub(c.fillers, sf, c.fillers.size())));
      return {replace(ps[1].antecedent, m.site, moved), ps[1].succedent};
    }
    case Rule::extract_l: {
      expect_op(r, P, Connective::extract);
      const Type &C = P->left(), &B = P->right();
      expect_same(r, ps[0].succedent, B, "first premise succedent");
      const Item& c = site_item(r, ps[1].antecedent, m.site, C);
      const auto k = static_cast<std::size_t>(m.k), sb = static_cast<std::size_t>(B->sort());
      std::vector<Config> fs = sub(c.fillers, 0, k - 1);
      fs.push_back(checked_gen_wrap(r, ps[0].antecedent, sub(c.fillers, k - 1, k - 1 + sb)));
      for (auto& f : sub(c.fillers, k - 1 + sb, c.fillers.size())) fs.push_back(std::move(f));
      return {replace(ps[1].antecedent, m.site, Config{Item::occurrence(P, std::move(fs), fresh_label)}),
              ps[1].succedent};
    }
    case Rule::infix_l: {
      expect_op(r, P, Connective::infix);
      const Type &A = P->left(), &C = P->right();
      expect_same(r, ps[0].succedent, A, "first premise succedent");
      const Item& c = site_item(r, ps[1].antecedent, m.site, C);
      const auto k = static_cast<std::size_t>(m.k), sp = static_cast<std::size_t>(P->sort());
      std::vector<Config> gs = sub(c.fillers, 0, k - 1);
      gs.push_back(Config{Item::occurrence(P, sub(c.fillers, k - 1, k - 1 + sp), fresh_label)});
      for (auto& f : sub(c.fillers, k - 1 + sp, c.fillers.size())) gs.push_back(std::move(f));
      return {replace(ps[1].antecedent, m.site, checked_gen_wrap(r, ps[0].antecedent, gs)), ps[1].succedent};
    }
    case Rule::product_l: {
      expect_op(r, P, Connective::product);
      if (m.site.end != m.site.start + 2) rule_fail(r, "site must address two items");
      Config pair;
      try {
        pair = slice(ps[0].antecedent, m.site);
      } catch (const AddressError& e) {
        rule_fail(r, std::string("bad site: ") + e.what());
      }
      const Item& a = site_item(r, pair, SpanRef{{}, 0, 1}, P->left());
      const Item& b = site_item(r, pair, SpanRef{{}, 1, 2}, P->right());
      std::vector<Config> fs = a.fillers;
      fs.insert(fs.end(), b.fillers.begin(), b.fillers.end());
      return {replace(ps[0].antecedent, m.site, Config{Item::occurrence(P, std::move(fs), fresh_label)}),
              ps[0].succedent};
    }
    case Rule::disc_product_l: {
      expect_op(r, P, Connective::disc_product);
      const Item& a = site_item(r, ps[0].antecedent, m.site, P->left());
      const auto k = static_cast<std::size_t>(m.k);
      if (k < 1 || k > a.fillers.size()) rule_fail(r, "k exceeds sort of the left component");
      const Config& hole = a.fillers[k - 1];
      if (hole.size() != 1) rule_fail(r, "wrapped hole does not hold a single occurrence");
      const Item& b = site_item(r, hole, SpanRef{{}, 0, 1}, P->right());
      std::vector<Config> fs = sub(a.fillers, 0, k - 1);
      fs.insert(fs.end(), b.fillers.begin(), b.fillers.end());
      for (auto& f : sub(a.fillers, k, a.fillers.size())) fs.push_back(std::move(f));
      return {replace(ps[0].antecedent, m.site, Config{Item::occurrence(P, std::move(fs), fresh_label)}),
              ps[0].succedent};
    }
    case Rule::unit_i_l: {
      expect_op(r, P, Connective::unit_i);
      if (!m.site.empty()) rule_fail(r, "site must be an empty span");
      try {
        return {replace(ps[0].antecedent, m.site, Config{Item::leaf(P, fresh_label)}), ps[0].succedent};
      } catch (const AddressError& e) {
        rule_fail(r, std::string("bad site: ") + e.what());
      }
    }
    case Rule::unit_j_l: {
      expect_op(r, P, Connective::unit_j);
      try {
        Config phi = slice(ps[0].antecedent, m.site);
        return {replace(ps[0].antecedent, m.site, Config{Item::hyper(P, {phi}, fresh_label)}), ps[0].succedent};
      } catch (const AddressError& e) {
        rule_fail(r, std::string("bad site: ") + e.what());
      }
    }
    case Rule::cut: {
      expect_same(r, ps[0].succedent, P, "first premise succedent");
      const Item& a = site_item(r, ps[1].antecedent, m.site, P);
      return {replace(ps[1].antecedent, m.site, checked_gen_wrap(r, ps[0].antecedent, a.fillers)), ps[1].succedent};
    }
  }
  rule_fail(r, "unknown rule");
}

inline Hypersequent forward_conclusion(Rule r, const RuleMeta& m, const std::vector<Hypersequent>& ps,
                                       int fresh_label = no_label) {
  return forward_conclusion(r, m, std::span<const Hypersequent>(ps.data(), ps.size()), fresh_label);
}

}  // namespace displace

#endif  // DISPLACE_RULES_HPP

// Proof trees and rule-instance metadata.

#ifndef DISPLACE_PROOF_HPP
#define DISPLACE_PROOF_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "displace/config.hpp"
#include "displace/matcher.hpp"

namespace displace {

enum class Rule {
  id,
  under_l,
  under_r,
  over_l,
  over_r,
  product_l,
  product_r,
  unit_i_l,
  unit_i_r,
  infix_l,
  infix_r,
  extract_l,
  extract_r,
  disc_product_l,
  disc_product_r,
  unit_j_l,
  unit_j_r,
  cut,
};

inline constexpr std::array<std::pair<Rule, std::string_view>, 18> rule_names{{
    {Rule::id, "id"},
    {Rule::under_l, "\\L"},
    {Rule::under_r, "\\R"},
    {Rule::over_l, "/L"},
    {Rule::over_r, "/R"},
    {Rule::product_l, "*L"},
    {Rule::product_r, "*R"},
    {Rule::unit_i_l, "IL"},
    {Rule::unit_i_r, "IR"},
    {Rule::infix_l, "!L"},
    {Rule::infix_r, "!R"},
    {Rule::extract_l, "^L"},
    {Rule::extract_r, "^R"},
    {Rule::disc_product_l, "(o)L"},
    {Rule::disc_product_r, "(o)R"},
    {Rule::unit_j_l, "JL"},
    {Rule::unit_j_r, "JR"},
    {Rule::cut, "Cut"},
}};

inline std::string rule_name(Rule r) {
  for (auto [rule, name] : rule_names)
    if (rule == r) return std::string(name);
  return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view s) {
  for (auto [rule, name] : rule_names)
    if (name == s) return rule;
  return std::nullopt;
}

inline int rule_arity(Rule r) {
  switch (r) {
    case Rule::id:
    case Rule::unit_i_r:
    case Rule::unit_j_r: return 0;
    case Rule::under_l:
    case Rule::over_l:
    case Rule::product_r:
    case Rule::infix_l:
    case Rule::extract_l:
    case Rule::disc_product_r:
    case Rule::cut: return 2;
    default: return 1;
  }
}

inline bool is_left_rule(Rule r) {
  switch (r) {
    case Rule::under_l:
    case Rule::over_l:
    case Rule::product_l:
    case Rule::unit_i_l:
    case Rule::infix_l:
    case Rule::extract_l:
    case Rule::disc_product_l:
    case Rule::unit_j_l: return true;
    default: return false;
  }
}

inline bool is_right_rule(Rule r) {
  switch (r) {
    case Rule::under_r:
    case Rule::over_r:
    case Rule::product_r:
    case Rule::unit_i_r:
    case Rule::infix_r:
    case Rule::extract_r:
    case Rule::disc_product_r:
    case Rule::unit_j_r: return true;
    default: return false;
  }
}

inline bool rule_indexed(Rule r) {
  switch (r) {
    case Rule::infix_l:
    case Rule::infix_r:
    case Rule::extract_l:
    case Rule::extract_r:
    case Rule::disc_product_l:
    case Rule::disc_product_r: return true;
    default: return false;
  }
}

// Data fixing one rule instance.
//
// `site` addresses material in the premise that carries the context
// (premise 2 for the binary left rules and Cut, the only premise for unary
// rules): the new vector(C) for \L, /L, ^L, !L; the vector(A) being cut for
// Cut; the pair A, B for *L; the A hyperleaf for (o)L; the gap left by I for
// IL; the filler of J for JL; vector(B) for ^R. Right rules other than ^R
// locate their material structurally and leave `site` empty.
//
// `focus` is the corresponding material in the conclusion. It is informative
// only; checking recomputes the conclusion from premises, principal, k and
// site.
struct RuleMeta {
  Type principal;  // active type; the Cut formula for Cut
  int k = 0;
  SpanRef site;
  SpanRef focus;
  std::string extraction;  // rendered fillers chosen by the instance
};

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Hypersequent conclusion;
  Rule rule = Rule::id;
  RuleMeta meta;
  std::vector<ProofPtr> premises;
};

inline ProofPtr make_proof(Hypersequent conclusion, Rule rule, RuleMeta meta, std::vector<ProofPtr> premises = {}) {
  auto n = std::make_shared<ProofNode>();
  n->conclusion = std::move(conclusion);
  n->rule = rule;
  n->meta = std::move(meta);
  n->premises = std::move(premises);
  return n;
}

inline std::size_t proof_size(const ProofPtr& p) {
  std::size_t n = 1;
  for (const auto& q : p->premises) n += proof_size(q);
  return n;
}

inline bool cut_free(const ProofPtr& p) {
  if (p->rule == Rule::cut) return false;
  for (const auto& q : p->premises)
    if (!cut_free(q)) return false;
  return true;
}

inline std::size_t count_cuts(const ProofPtr& p) {
  std::size_t n = p->rule == Rule::cut ? 1 : 0;
  for (const auto& q : p->premises) n += count_cuts(q);
  return n;
}

// Pre-order visit with node path strings such as "root.1.0".
inline void for_each_node(const ProofPtr& p, const std::function<void(const ProofNode&, const std::string&)>& f,
                          const std::string& path = "root") {
  f(*p, path);
  for (std::size_t i = 0; i < p->premises.size(); ++i) for_each_node(p->premises[i], f, path + "." + std::to_string(i));
}

inline std::string fillers_text(const std::vector<Config>& thetas) {
  std::string out;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (i) out += " | ";
    out += render_config(thetas[i]);
  }
  return out;
}

// Structural equality of proofs (labels ignored).
inline bool same_proof(const ProofPtr& a, const ProofPtr& b) {
  if (a == b) return true;
  if (a->rule != b->rule || !(a->conclusion == b->conclusion) || a->premises.size() != b->premises.size())
    return false;
  for (std::size_t i = 0; i < a->premises.size(); ++i)
    if (!same_proof(a->premises[i], b->premises[i])) return false;
  return true;
}

}  // namespace displace

#endif  // DISPLACE_PROOF_HPP

// Independent proof checking, subformula property and weight invariant.

#ifndef DISPLACE_CHECKER_HPP
#define DISPLACE_CHECKER_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include "displace/config.hpp"
#include "displace/proof.hpp"
#include "displace/rules.hpp"

namespace displace {

struct CheckResult {
  bool ok = true;
  std::string node;  // e.g. "root.1.0"
  std::string rule;
  std::string message;

  explicit operator bool() const { return ok; }
  std::string text() const { return ok ? "ok" : node + " (" + rule + "): " + message; }
};

namespace detail {

inline CheckResult check_node(const ProofPtr& p, const std::string& path) {
  auto fail = [&](std::string msg) { return CheckResult{false, path, rule_name(p->rule), std::move(msg)}; };
  if (!p) return CheckResult{false, path, "?", "missing node"};
  std::string why;
  if (!sequent_well_formed(p->conclusion, &why)) return fail("conclusion is not a valid hypersequent: " + why);
  if (static_cast<int>(p->premises.size()) != rule_arity(p->rule))
    return fail("expected " + std::to_string(rule_arity(p->rule)) + " premises, found " +
                std::to_string(p->premises.size()));
  // Premises first, so a corrupted node is reported itself rather than
  // through its parent.
  std::vector<Hypersequent> ps;
  for (std::size_t i = 0; i < p->premises.size(); ++i) {
    const auto& q = p->premises[i];
    if (!q) return fail("missing premise");
    CheckResult r = check_node(q, path + "." + std::to_string(i));
    if (!r) return r;
    ps.push_back(q->conclusion);
  }
  try {
    Hypersequent expect = forward_conclusion(p->rule, p->meta, ps);
    if (!(expect == p->conclusion))
      return fail("conclusion mismatch: rule yields '" + render_sequent(expect) + "' but node states '" +
                  render_sequent(p->conclusion) + "'");
  } catch (const RuleError& e) {
    return fail(e.what());
  } catch (const std::exception& e) {
    return fail(std::string("malformed instance: ") + e.what());
  }
  return {};
}

}  // namespace detail

// Recomputes every conclusion from its premises through the forward schema and
// reports the first node, in post-order, that disagrees.
inline CheckResult check_proof(const ProofPtr& p) { return detail::check_node(p, "root"); }

// Every type occurring in the proof is a subformula of a type in the
// endsequent.
inline bool subformula_check(const ProofPtr& p) {
  std::vector<Type> roots = occurrence_types(p->conclusion.antecedent);
  roots.push_back(p->conclusion.succedent);
  std::unordered_set<std::string> allowed;
  for (const Type& t : roots) {
    std::vector<Type> subs;
    collect_subformulas(t, subs);
    for (const Type& s : subs) allowed.insert(s->text());
  }
  bool ok = true;
  for_each_node(p, [&](const ProofNode& n, const std::string&) {
    if (!ok) return;
    if (!allowed.count(n.conclusion.succedent->text())) ok = false;
    for (const Type& t : occurrence_types(n.conclusion.antecedent))
      if (!allowed.count(t->text())) ok = false;
    if (n.meta.principal && !allowed.count(n.meta.principal->text())) ok = false;
  });
  return ok;
}

// Premises of every non-axiom node together weigh exactly one less than its
// conclusion. Returns the first violating node path, or empty.
inline std::string weight_violation(const ProofPtr& p) {
  std::string bad;
  for_each_node(p, [&](const ProofNode& n, const std::string& path) {
    if (!bad.empty() || n.premises.empty() || n.rule == Rule::cut) return;
    int sum = 0;
    for (const auto& q : n.premises) sum += total_weight(q->conclusion);
    if (sum != total_weight(n.conclusion) - 1) bad = path;
  });
  return bad;
}

}  // namespace displace

#endif  // DISPLACE_CHECKER_HPP

// Cut elimination: degree, splicing, one-step reduction and the driver.
//
// Reduction works on a relabelled copy of the proof in which every
// occurrence carries the label of the node that introduced it (an axiom or
// the left rule making it principal). Rebuilt rule instances find their
// premise-side sites by label, so no address arithmetic is repeated here.

#ifndef DISPLACE_CUTELIM_HPP
#define DISPLACE_CUTELIM_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "displace/checker.hpp"
#include "displace/config.hpp"
#include "displace/matcher.hpp"
#include "displace/proof.hpp"
#include "displace/rules.hpp"

namespace displace {

class CutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One reduction step: which case fired, at which node, and the degrees of
// the reduced Cut and of the Cuts it was replaced by.
struct CutStep {
  std::string kind;
  std::string node;
  int degree_before = 0;
  std::vector<int> degrees_after;
};

// |Gamma| + |Delta| + |A| + |B| where the hole of Delta weighs nothing. The
// fillers of the cut occurrence belong to the context.
inline int cut_degree(const ProofNode& cut) {
  if (cut.rule != Rule::cut || cut.premises.size() != 2) throw CutError("not a Cut node");
  const Hypersequent& left = cut.premises[0]->conclusion;
  const Hypersequent& right = cut.premises[1]->conclusion;
  const Type& A = cut.meta.principal;
  int gamma = weight_config(left.antecedent);
  int delta = weight_config(right.antecedent) - weight_type(A);
  return gamma + delta + weight_type(A) + weight_type(right.succedent);
}

// Cut of `p1` (Gamma => A) into the occurrence of A at `at` in `p2`.
inline ProofPtr splice_cut(const ProofPtr& p1, const ProofPtr& p2, const OccRef& at) {
  RuleMeta m;
  m.principal = p1->conclusion.succedent;
  m.k = m.principal->k();
  m.site = at.span();
  Hypersequent c;
  try {
    c = forward_conclusion(Rule::cut, m, std::vector<Hypersequent>{p1->conclusion, p2->conclusion});
  } catch (const RuleError& e) {
    throw CutError(e.what());
  }
  return make_proof(std::move(c), Rule::cut, std::move(m), {p1, p2});
}

namespace detail {

struct Labelled {
  ProofPtr proof;
  std::map<const ProofNode*, int> fresh;  // label introduced at each node
};

inline ProofPtr relabel_into(const ProofPtr& p, int& next, std::map<const ProofNode*, int>& fresh) {
  std::vector<ProofPtr> prem;
  std::vector<Hypersequent> ps;
  for (const ProofPtr& q : p->premises) {
    prem.push_back(relabel_into(q, next, fresh));
    ps.push_back(prem.back()->conclusion);
  }
  int f = next++;
  Hypersequent c = forward_conclusion(p->rule, p->meta, ps, f);
  if (!(c == p->conclusion)) throw CutError(rule_name(p->rule) + ": conclusion does not follow from premises");
  ProofPtr out = make_proof(std::move(c), p->rule, p->meta, std::move(prem));
  fresh[out.get()] = f;
  return out;
}

inline Labelled relabel(const ProofPtr& p) {
  Labelled l;
  int next = 0;
  l.proof = relabel_into(p, next, l.fresh);
  return l;
}

inline int label_at(const Config& c, const SpanRef& s, int offset = 0) {
  return item_at(c, OccRef{s.path, s.start + offset}).label;
}

inline OccRef locate(const Config& c, int label) {
  auto at = find_label(c, label);
  if (!at) throw std::logic_error("label " + std::to_string(label) + " lost during reduction");
  return *at;
}

inline ProofPtr make_cut(const ProofPtr& p1, const ProofPtr& p2, int label) {
  return splice_cut(p1, p2, locate(p2->conclusion.antecedent, label));
}

// Same rule as `old` over new premises. `f` labels the principal occurrence;
// `target` is the conclusion the instance must reproduce.
inline ProofPtr rebuild(const ProofNode& old, std::vector<ProofPtr> prem, int f, const Hypersequent& target) {
  RuleMeta m = old.meta;
  auto relocate = [&](std::size_t i, int width) {
    const Config& before = old.premises[i]->conclusion.antecedent;
    OccRef at = locate(prem[i]->conclusion.antecedent, label_at(before, old.meta.site));
    if (width == 2) {
      const Item& second = item_at(prem[i]->conclusion.antecedent, OccRef{at.path, at.index + 1});
      if (second.label != label_at(before, old.meta.site, 1)) throw std::logic_error("product pair split apart");
    }
    m.site = SpanRef{at.path, at.index, at.index + width};
  };
  switch (old.rule) {
    case Rule::under_l:
    case Rule::over_l:
    case Rule::extract_l:
    case Rule::infix_l:
    case Rule::cut: relocate(1, 1); break;
    case Rule::product_l: relocate(0, 2); break;
    case Rule::disc_product_l:
    case Rule::extract_r: relocate(0, 1); break;
    case Rule::unit_i_l: {
      OccRef at = locate(target.antecedent, f);
      m.site = SpanRef{at.path, at.index, at.index};
      break;
    }
    case Rule::unit_j_l: {
      OccRef at = locate(target.antecedent, f);
      const Item& j = item_at(target.antecedent, at);
      m.site = SpanRef{at.path, at.index, at.index + static_cast<int>(j.fillers.at(0).size())};
      break;
    }
    default: break;
  }
  std::vector<Hypersequent> ps;
  for (const ProofPtr& q : prem) ps.push_back(q->conclusion);
  Hypersequent c = forward_conclusion(old.rule, m, ps, f);
  if (!(c == target)) throw std::logic_error(rule_name(old.rule) + ": rebuilt conclusion differs");
  if (is_left_rule(old.rule)) {
    OccRef at = locate(c.antecedent, f);
    m.focus = at.span();
  }
  return make_proof(std::move(c), old.rule, std::move(m), std::move(prem));
}

inline std::string connective_name(Rule r) {
  std::string n = rule_name(r);
  return n.substr(0, n.size() - 1);
}

// Reduces the Cut `cut` whose premises are cut-free.
inline ProofPtr reduce_cut(const ProofPtr& cut, const Labelled& lab, CutStep& step) {
  const ProofPtr& p1 = cut->premises[0];
  const ProofPtr& p2 = cut->premises[1];
  const Hypersequent& target = cut->conclusion;
  const int a = label_at(p2->conclusion.antecedent, cut->meta.site);
  auto fresh = [&](const ProofPtr& n) { return lab.fresh.at(n.get()); };
  std::vector<ProofPtr> made;
  ProofPtr out;

  if (p1->rule == Rule::id) {
    step.kind = "axiom-left";
    out = p2;
  } else if (p2->rule == Rule::id) {
    step.kind = "axiom-right";
    out = p1;
  } else if (is_left_rule(p1->rule)) {
    // The cut formula is the succedent, never active on the left.
    step.kind = "permute-left:" + rule_name(p1->rule);
    std::size_t j = p1->premises.size() == 2 ? 1 : 0;
    std::vector<ProofPtr> prem = p1->premises;
    prem[j] = make_cut(p1->premises[j], p2, a);
    made.push_back(prem[j]);
    out = rebuild(*p1, std::move(prem), fresh(p1), target);
  } else if (!is_left_rule(p2->rule) || fresh(p2) != a) {
    step.kind = "permute-right:" + rule_name(p2->rule);
    std::vector<ProofPtr> prem = p2->premises;
    std::optional<std::size_t> j;
    for (std::size_t i = 0; i < prem.size() && !j; ++i)
      if (find_label(prem[i]->conclusion.antecedent, a)) j = i;
    if (!j) throw std::logic_error("cut occurrence not found in any premise");
    prem[*j] = make_cut(p1, prem[*j], a);
    made.push_back(prem[*j]);
    out = rebuild(*p2, std::move(prem), fresh(p2), target);
  } else {
    step.kind = "principal:" + connective_name(p2->rule);
    const ProofPtr& q = p1->premises.empty() ? nullptr : p1->premises[0];
    auto side_cut = [&](int inner) {
      // Cut the first premise of the left rule into the right rule's premise
      // at `inner`, then the result into the second premise at its site.
      int c = label_at(p2->premises[1]->conclusion.antecedent, p2->meta.site);
      ProofPtr c1 = make_cut(p2->premises[0], q, inner);
      ProofPtr c2 = make_cut(c1, p2->premises[1], c);
      made = {c1, c2};
      return c2;
    };
    switch (p2->rule) {
      case Rule::under_l: out = side_cut(q->conclusion.antecedent.front().label); break;
      case Rule::over_l: out = side_cut(q->conclusion.antecedent.back().label); break;
      case Rule::infix_l: out = side_cut(q->conclusion.antecedent.at(0).label); break;
      case Rule::extract_l: out = side_cut(label_at(q->conclusion.antecedent, p1->meta.site)); break;
      case Rule::product_l:
      case Rule::disc_product_l: {
        const ProofPtr& r = p2->premises[0];
        const Config& ra = r->conclusion.antecedent;
        int la = label_at(ra, p2->meta.site);
        int lb = p2->rule == Rule::product_l
                     ? label_at(ra, p2->meta.site, 1)
                     : item_at(ra, OccRef{p2->meta.site.path, p2->meta.site.start})
                           .fillers.at(static_cast<std::size_t>(p2->meta.k - 1))
                           .at(0)
                           .label;
        ProofPtr c1 = make_cut(p1->premises[0], r, la);
        ProofPtr c2 = make_cut(p1->premises[1], c1, lb);
        made = {c1, c2};
        out = c2;
        break;
      }
      case Rule::unit_i_l:
      case Rule::unit_j_l: out = p2->premises[0]; break;
      default: throw std::logic_error("no principal case for " + rule_name(p2->rule));
    }
  }
  if (!(out->conclusion == target)) throw std::logic_error(step.kind + ": endsequent changed");
  step.degree_before = cut_degree(*cut);
  for (const ProofPtr& c : made) {
    int d = cut_degree(*c);
    if (d >= step.degree_before)
      throw std::logic_error(step.kind + ": new Cut of degree " + std::to_string(d) + " not below " +
                             std::to_string(step.degree_before));
    step.degrees_after.push_back(d);
  }
  return out;
}

// Path (premise indices) to the leftmost Cut with no Cut above it.
inline bool find_topmost_cut(const ProofPtr& p, std::vector<std::size_t>& path) {
  for (std::size_t i = 0; i < p->premises.size(); ++i) {
    path.push_back(i);
    if (find_topmost_cut(p->premises[i], path)) return true;
    path.pop_back();
  }
  return p->rule == Rule::cut;
}

inline ProofPtr replace_at(const ProofPtr& p, const std::vector<std::size_t>& path, std::size_t depth,
                           const ProofPtr& with) {
  if (depth == path.size()) return with;
  auto n = std::make_shared<ProofNode>(*p);
  n->premises[path[depth]] = replace_at(p->premises[path[depth]], path, depth + 1, with);
  return n;
}

inline std::string path_name(const std::vector<std::size_t>& path) {
  std::string s = "root";
  for (std::size_t i : path) s += "." + std::to_string(i);
  return s;
}

}  // namespace detail

// Copy of `p` whose conclusions label every occurrence by the node that
// introduced it. Labels are shared along the path an occurrence travels.
inline ProofPtr label_occurrences(const ProofPtr& p) { return detail::relabel(p).proof; }

// Reduces the leftmost topmost Cut. Throws CutError if `p` is cut-free or
// not locally valid.
inline ProofPtr reduce_once(const ProofPtr& p, CutStep* step = nullptr) {
  detail::Labelled lab = detail::relabel(p);
  std::vector<std::size_t> path;
  if (!detail::find_topmost_cut(lab.proof, path)) throw CutError("proof has no Cut");
  ProofPtr cut = lab.proof;
  for (std::size_t i : path) cut = cut->premises[i];
  CutStep s;
  s.node = detail::path_name(path);
  ProofPtr reduced = detail::reduce_cut(cut, lab, s);
  if (step) *step = s;
  return detail::replace_at(lab.proof, path, 0, reduced);
}

// Cut-free proof of the same endsequent. Steps are appended to `trace`.
inline ProofPtr eliminate(ProofPtr p, std::vector<CutStep>* trace = nullptr) {
  const Hypersequent end = p->conclusion;
  while (!cut_free(p)) {
    CutStep s;
    p = reduce_once(p, &s);
    if (trace) trace->push_back(std::move(s));
  }
  if (!(p->conclusion == end)) throw std::logic_error("cut elimination changed the endsequent");
  return p;
}

}  // namespace displace

#endif  // DISPLACE_CUTELIM_HPP

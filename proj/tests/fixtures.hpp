// Worked sentences with their expected readings, and Cut fixtures spliced
// from their derivations. Shared by the unit tests and the acceptance run.
#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <memory>
#include <string>
#include <vector>

#include "displace/checker.hpp"
#include "displace/cutelim.hpp"
#include "displace/lexicon.hpp"
#include "displace/parse.hpp"
#include "displace/prover.hpp"
#include "displace/semantics.hpp"

namespace fixtures {

using namespace displace;

struct Golden {
  std::string name;
  std::string sentence;
  std::string goal;
  std::vector<std::string> readings;  // ASCII term syntax
  double budget_seconds;
};

inline void PrintTo(const Golden& g, std::ostream* os) { *os << g.name; }

inline const std::vector<Golden>& golden() {
  static const std::vector<Golden> g = {
      {"idiom", "mary gave the man the cold shoulder", "S", {"((shunned (iota man)) m)"}, 60},
      {"quantifier-object", "john gave every book to mary", "S",
       {"forall C[(book C) implies (((gave m) C) j)]"}, 60},
      {"de-re-de-dicto", "mary thinks someone left", "S",
       {"((thinks exists B[(person B) and (left B)]) m)", "exists B[(person B) and ((thinks (left B)) m)]"}, 60},
      {"scope-ambiguity", "everyone loves someone", "S",
       {"exists B[(person B) and forall E[(person E) implies ((love B) E)]]",
        "forall B[(person B) implies exists E[(person E) and ((love E) B)]]"},
       60},
      {"vp-ellipsis-before", "john slept before mary did", "S", {"((before (slept m)) (slept j))"}, 60},
      {"vp-ellipsis-too", "john slept and mary did too", "S", {"[(slept j) and (slept m)]"}, 60},
      {"medial-extraction", "dog that mary saw today", "CN", {"lam C. [(dog C) and (today ((saw C) m))]"}, 60},
      {"pied-piping", "mountain the painting of which by cezanne john sold for $10,000,000", "CN",
       {"lam D. [(mountain D) and (((sold tenmilliondollars) (iota ((by cezanne) ((of D) painting)))) j)]"}, 300},
      {"appositive", "john who jogs sneezed", "S", {"[(jogs j) and (sneezed j)]"}, 60},
      {"parenthetical-initial", "fortunately john has perseverance", "S",
       {"(fortunately ((has perseverance) j))"}, 60},
      {"parenthetical-subject", "john fortunately has perseverance", "S",
       {"(fortunately ((has perseverance) j))"}, 60},
      {"parenthetical-verb", "john has fortunately perseverance", "S",
       {"(fortunately ((has perseverance) j))"}, 60},
      {"parenthetical-final", "john has perseverance fortunately", "S",
       {"(fortunately ((has perseverance) j))"}, 60},
      {"gapping", "john studies logic and charles phonetics", "S",
       {"[((studies logic) j) and ((studies phonetics) c)]"}, 60},
      {"comparative-subdeletion", "john ate more donuts than mary bought bagels", "S",
       {"[|lam C. [(donuts C) and ((ate C) j)]| > |lam C. [(bagels C) and ((bought C) m)]|]"}, 300},
      {"reflexive", "john sent himself flowers", "S", {"(((sent j) flowers) j)"}, 60},
  };
  return g;
}

inline std::string lexicon_path() { return std::string(DISPLACE_DATA_DIR) + "/lexicon.txt"; }

inline const Lexicon& shipped_lexicon() {
  static const Lexicon lex = load_lexicon(lexicon_path());
  return lex;
}

// Expected readings that no produced reading matches, and produced readings
// matching no expected one.
struct ReadingDiff {
  std::vector<std::string> missing;
  std::vector<std::string> extra;
  bool ok() const { return missing.empty() && extra.empty(); }
};

inline ReadingDiff compare_readings(const std::vector<SemTerm>& got, const std::vector<std::string>& want) {
  ReadingDiff d;
  std::vector<SemTerm> expected;
  for (const std::string& w : want) expected.push_back(parse_term(w));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    bool hit = false;
    for (const SemTerm& g : got) hit = hit || alpha_eq(g, expected[i]);
    if (!hit) d.missing.push_back(want[i]);
  }
  for (const SemTerm& g : got) {
    bool hit = false;
    for (const SemTerm& e : expected) hit = hit || alpha_eq(g, e);
    if (!hit) d.extra.push_back(render_term(g));
  }
  return d;
}

// Label-aware equality: same shape, types and labels.
inline bool same_labelled(const Config& a, const Config& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Item& x = a[i];
    const Item& y = b[i];
    if (x.kind != y.kind || x.label != y.label) return false;
    if (x.kind == Item::Kind::separator) continue;
    if (!same_type(x.type, y.type) || x.fillers.size() != y.fillers.size()) return false;
    for (std::size_t j = 0; j < x.fillers.size(); ++j)
      if (!same_labelled(x.fillers[j], y.fillers[j])) return false;
  }
  return true;
}

// Every place where `part` occurs verbatim (labels included) in `whole`.
inline std::vector<SpanRef> verbatim_spans(const Config& whole, const Config& part) {
  std::vector<SpanRef> out;
  if (part.empty()) return out;
  for (const Path& p : enumerate_levels(whole)) {
    const Config& lvl = level_at(whole, p);
    for (std::size_t s = 0; s + part.size() <= lvl.size(); ++s) {
      SpanRef span{p, static_cast<int>(s), static_cast<int>(s + part.size())};
      if (same_labelled(slice(whole, span), part)) out.push_back(span);
    }
  }
  return out;
}

struct CutFixture {
  std::string name;
  ProofPtr proof;                // ends in the spliced Cut
  std::vector<SemTerm> lexical;  // terms for the endsequent's occurrences
};

inline ProofPtr replace_subproof(const ProofPtr& p, const std::vector<std::size_t>& path, std::size_t depth,
                                 const ProofPtr& with) {
  if (depth == path.size()) return with;
  auto n = std::make_shared<ProofNode>(*p);
  n->premises[path[depth]] = replace_subproof(p->premises[path[depth]], path, depth + 1, with);
  return n;
}

inline std::string path_text(const std::vector<std::size_t>& path) {
  std::string s = "root";
  for (std::size_t i : path) s += "." + std::to_string(i);
  return s;
}

// Splices Cuts into derivations of the worked sentences. For a node M and a
// proper subproof N of Gamma => A whose antecedent appears verbatim in M's,
// M's sequent with Gamma abstracted to A is proved afresh, N is cut into it,
// and the Cut takes M's place in the derivation.
inline std::vector<CutFixture> cut_fixtures(std::size_t per_sentence = 8) {
  const Lexicon& lex = shipped_lexicon();
  std::vector<CutFixture> out;
  for (const Golden& g : golden()) {
    Type goal = parse_type(g.goal);
    std::size_t made = 0;
    for (const Insertion& in : insertions(tokenize(g.sentence), lex)) {
      Hypersequent root_seq{in.config, goal};
      if (sort_of(root_seq.antecedent) != goal->sort()) continue;
      SearchResult found = prove_all(root_seq, SearchLimits{1, 60, false});
      if (found.proofs.empty()) continue;
      ProofPtr root = label_occurrences(found.proofs[0]);
      std::vector<std::pair<std::vector<std::size_t>, ProofPtr>> nodes;
      std::function<void(const ProofPtr&, std::vector<std::size_t>&)> collect = [&](const ProofPtr& n,
                                                                                  std::vector<std::size_t>& path) {
        nodes.emplace_back(path, n);
        for (std::size_t i = 0; i < n->premises.size(); ++i) {
          path.push_back(i);
          collect(n->premises[i], path);
          path.pop_back();
        }
      };
      std::vector<std::size_t> start;
      collect(root, start);
      std::size_t verbatim = 0;
      for (const auto& [mpath, m] : nodes) {
        for (const auto& [npath, n] : nodes) {
          if (verbatim >= per_sentence / 2) break;
          bool below = npath.size() > mpath.size() && std::equal(mpath.begin(), mpath.end(), npath.begin());
          if (!below || n->rule == Rule::id) continue;
          const Config& ant = m->conclusion.antecedent;
          std::vector<SpanRef> spans = verbatim_spans(ant, n->conclusion.antecedent);
          if (spans.size() != 1) continue;
          Config abstracted = replace(ant, spans[0], Config{vector_item(n->conclusion.succedent)});
          SearchResult rest = prove_all(Hypersequent{abstracted, m->conclusion.succedent}, SearchLimits{1, 60, false});
          if (rest.proofs.empty()) continue;
          ProofPtr cut = splice_cut(n, rest.proofs[0], OccRef{spans[0].path, spans[0].start});
          out.push_back({g.name + "@" + path_text(mpath) + "/" + path_text(npath),
                         replace_subproof(root, mpath, 0, cut), in.terms});
          ++made;
          ++verbatim;
        }
      }
      // Expanded identities cut against non-atomic occurrences, so the Cut
      // travels up to the rule that uses the occurrence.
      for (const auto& [mpath, m] : nodes) {
        for (const Occurrence& o : occurrences(m->conclusion.antecedent)) {
          if (made >= per_sentence) break;
          if (o.type->op() == Connective::atom) continue;
          ProofPtr eta;
          for (const ProofPtr& q : prove_all(Hypersequent{vector_of(o.type), o.type}).proofs)
            if (q->rule != Rule::id) {
              eta = q;
              break;
            }
          if (!eta) continue;
          ProofPtr cut = splice_cut(eta, m, o.at);
          out.push_back({g.name + "@" + path_text(mpath) + "/eta:" + render_type(o.type),
                         replace_subproof(root, mpath, 0, cut), in.terms});
          ++made;
        }
        if (made >= per_sentence) break;
      }
      if (made >= per_sentence) break;
    }
  }
  return out;
}

inline SemTerm reading_of(const ProofPtr& p, const std::vector<SemTerm>& lexical) {
  return normalize(extract_term(p, lexical, shipped_lexicon().atoms));
}

}  // namespace fixtures

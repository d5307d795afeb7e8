// Sentence parsing: lexical insertion, proof search and reading extraction.

#ifndef DISPLACE_PARSE_HPP
#define DISPLACE_PARSE_HPP

#include <string>
#include <vector>

#include "displace/lexicon.hpp"
#include "displace/prover.hpp"
#include "displace/semantics.hpp"

namespace displace {

struct Reading {
  SemTerm term;  // normalized
  std::size_t proofs = 0;
};

struct Derivation {
  std::size_t insertion = 0;
  ProofPtr proof;
  std::size_t reading = 0;  // index into ParseReport::readings
};

struct ParseReport {
  std::vector<std::string> tokens;
  std::vector<std::string> unknown;
  std::vector<Insertion> insertions;
  std::vector<Derivation> derivations;
  std::vector<Reading> readings;
  bool truncated = false;
};

// Proves every insertion of `sentence` against `goal`. With `dedup`,
// derivations with alpha-equal normalized terms share one reading.
inline ParseReport parse_sentence(const std::string& sentence, const Lexicon& lex, const Type& goal,
                                  const SearchLimits& limits = {}, bool dedup = true) {
  ParseReport r;
  r.tokens = tokenize(sentence);
  r.unknown = unknown_tokens(r.tokens, lex);
  r.insertions = insertions(r.tokens, lex);
  Prover prover(limits);
  for (std::size_t i = 0; i < r.insertions.size(); ++i) {
    const Insertion& ins = r.insertions[i];
    Hypersequent goal_seq{ins.config, goal};
    if (sort_of(goal_seq.antecedent) != goal->sort()) continue;
    SearchResult found = prover.prove_all(goal_seq);
    r.truncated = r.truncated || found.truncated;
    for (const ProofPtr& p : found.proofs) {
      SemTerm t = normalize(extract_term(p, ins.terms, lex.atoms));
      std::size_t k = r.readings.size();
      if (dedup)
        for (std::size_t j = 0; j < r.readings.size(); ++j)
          if (alpha_eq(r.readings[j].term, t)) {
            k = j;
            break;
          }
      if (k == r.readings.size()) r.readings.push_back({t, 0});
      ++r.readings[k].proofs;
      r.derivations.push_back({i, p, k});
    }
  }
  return r;
}

}  // namespace displace

#endif  // DISPLACE_PARSE_HPP

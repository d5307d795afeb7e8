// Lexicon files, lookup and lexical insertion.

#ifndef DISPLACE_LEXICON_HPP
#define DISPLACE_LEXICON_HPP

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "displace/config.hpp"
#include "displace/semantics.hpp"
#include "displace/type.hpp"

namespace displace {

inline const std::string lexical_separator = "1";

struct LexEntry {
  std::vector<std::string> surface;
  Type type;
  SemTerm term;
  int line = 0;

  // Token runs between separators.
  std::vector<std::vector<std::string>> segments() const {
    std::vector<std::vector<std::string>> out(1);
    for (const auto& tok : surface) {
      if (tok == lexical_separator) out.emplace_back();
      else out.back().push_back(tok);
    }
    return out;
  }
  bool continuous() const { return type->sort() == 0; }
};

class LexiconError : public std::runtime_error {
 public:
  LexiconError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Lexicon {
  std::vector<LexEntry> entries;
  std::multimap<std::string, std::size_t> by_first;  // first token -> entry index
  AtomTable atoms;

  void add(LexEntry e) {
    by_first.emplace(e.surface.front(), entries.size());
    entries.push_back(std::move(e));
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline void check_entry(const LexEntry& e, const AtomTable& atoms, const std::string& source) {
  int seps = 0;
  for (const auto& t : e.surface) seps += t == lexical_separator;
  if (seps != e.type->sort())
    throw LexiconError(source, e.line,
                       "surface has " + std::to_string(seps) + " separators but type has sort " +
                           std::to_string(e.type->sort()));
  if (e.surface.front() == lexical_separator || e.surface.back() == lexical_separator)
    throw LexiconError(source, e.line, "surface may not begin or end with a separator");
  for (std::size_t i = 1; i < e.surface.size(); ++i)
    if (e.surface[i] == lexical_separator && e.surface[i - 1] == lexical_separator)
      throw LexiconError(source, e.line, "adjacent separators in surface");
  SemType want;
  try {
    want = sem_type(e.type, atoms);
  } catch (const SemError& x) {
    throw LexiconError(source, e.line, x.what());
  }
  try {
    typecheck_against(e.term, want);
  } catch (const TermTypeError& x) {
    throw LexiconError(source, e.line, std::string("ill-typed term: ") + x.what());
  }
}

}  // namespace detail

// Parses lexicon text. `source` names the input in diagnostics.
inline Lexicon parse_lexicon(std::string_view text, const std::string& source = "<lexicon>") {
  Lexicon lex;
  bool atoms_given = false;
  std::vector<LexEntry> pending;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("atom ", 0) == 0) {
      std::size_t colon = line.find(':');
      if (colon == std::string::npos) throw LexiconError(source, lineno, "atom line needs ':'");
      std::string name = detail::trim(std::string_view(line).substr(5, colon - 5));
      try {
        lex.atoms[name] = parse_sem_type(detail::trim(std::string_view(line).substr(colon + 1)));
      } catch (const SyntaxError& e) {
        throw LexiconError(source, lineno, e.what());
      }
      atoms_given = true;
      continue;
    }
    std::size_t c1 = line.find(':');
    std::size_t c2 = c1 == std::string::npos ? c1 : line.find(':', c1 + 1);
    if (c2 == std::string::npos) throw LexiconError(source, lineno, "expected 'surface : type : term'");
    LexEntry e;
    e.line = lineno;
    e.surface = detail::split_tokens(std::string_view(line).substr(0, c1));
    if (e.surface.empty()) throw LexiconError(source, lineno, "empty surface");
    try {
      e.type = parse_type(detail::trim(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)));
    } catch (const SyntaxError& x) {
      throw LexiconError(source, lineno, std::string("type: ") + x.what());
    }
    if (auto v = validate_type(e.type)) throw LexiconError(source, lineno, "type: " + v->subformula->text() + ": " + v->reason);
    try {
      e.term = parse_term(detail::trim(std::string_view(line).substr(c2 + 1)));
    } catch (const SyntaxError& x) {
      throw LexiconError(source, lineno, std::string("term: ") + x.what());
    }
    pending.push_back(std::move(e));
  }
  if (!atoms_given) lex.atoms = default_atoms();
  for (LexEntry& e : pending) {
    detail::check_entry(e, lex.atoms, source);
    lex.add(std::move(e));
  }
  return lex;
}

inline Lexicon load_lexicon(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LexiconError(path, 0, "cannot open lexicon");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_lexicon(buf.str(), path);
}

inline std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out = detail::split_tokens(sentence);
  for (auto& t : out)
    for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

namespace detail {

// Can `segs` match tokens[from, to) with each gap taking at least one token?
inline bool segments_match(const std::vector<std::vector<std::string>>& segs, const std::vector<std::string>& toks,
                           std::size_t si, std::size_t from, std::size_t to) {
  const auto& s = segs[si];
  if (to - from < s.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (toks[from + i] != s[i]) return false;
  std::size_t after = from + s.size();
  if (si + 1 == segs.size()) return after == to;
  for (std::size_t next = after + 1; next < to; ++next)
    if (segments_match(segs, toks, si + 1, next, to)) return true;
  return false;
}

}  // namespace detail

// Entries whose surface matches `tokens` exactly; a separator in the
// surface matches any nonempty run of tokens.
inline std::vector<const LexEntry*> lookup(const Lexicon& lex, const std::vector<std::string>& tokens) {
  std::vector<const LexEntry*> out;
  if (tokens.empty()) return out;
  auto [b, e] = lex.by_first.equal_range(tokens.front());
  for (auto it = b; it != e; ++it) {
    const LexEntry& entry = lex.entries[it->second];
    if (detail::segments_match(entry.segments(), tokens, 0, 0, tokens.size())) out.push_back(&entry);
  }
  return out;
}

// A configuration from lexical insertion with its labelling: `terms` and
// `entries` follow the pre-order of occurrences.
struct Insertion {
  Config config;
  std::vector<SemTerm> terms;
  std::vector<const LexEntry*> entries;

  std::string key() const {
    std::string k = render_config(config);
    for (const auto& t : terms) k += " | " + render_term(t);
    return k;
  }
};

namespace detail {

class Inserter {
 public:
  Inserter(const Lexicon& lex, const std::vector<std::string>& toks) : lex_(lex), toks_(toks) {}

  // All labelled covers of tokens[i, j).
  const std::vector<Insertion>& cover(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Insertion> out;
    if (i == j) {
      out.push_back({});
    } else if (toks_[i] == lexical_separator) {
      for (const Insertion& rest : cover(i + 1, j)) {
        Insertion x;
        x.config.push_back(Item::separator());
        append(x, rest);
        out.push_back(std::move(x));
      }
    } else {
      auto [b, e] = lex_.by_first.equal_range(toks_[i]);
      for (auto it = b; it != e; ++it) {
        const LexEntry& entry = lex_.entries[it->second];
        place(entry, entry.segments(), 0, i, j, {}, out);
      }
    }
    std::vector<Insertion> dedup;
    std::set<std::string> seen;
    for (auto& x : out)
      if (seen.insert(x.key()).second) dedup.push_back(std::move(x));
    return memo_[key] = std::move(dedup);
  }

 private:
  const Lexicon& lex_;
  const std::vector<std::string>& toks_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Insertion>> memo_;

  static void append(Insertion& into, const Insertion& tail) {
    into.config.insert(into.config.end(), tail.config.begin(), tail.config.end());
    into.terms.insert(into.terms.end(), tail.terms.begin(), tail.terms.end());
    into.entries.insert(into.entries.end(), tail.entries.begin(), tail.entries.end());
  }

  // Matches segment `si` of `entry` at `pos`, then fillers and later
  // segments, then the rest of [pos, j). `gaps` holds filler spans so far.
  void place(const LexEntry& entry, const std::vector<std::vector<std::string>>& segs, std::size_t si,
             std::size_t pos, std::size_t j, std::vector<std::pair<std::size_t, std::size_t>> gaps,
             std::vector<Insertion>& out) {
    const auto& s = segs[si];
    if (j - pos < s.size()) return;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (toks_[pos + k] != s[k]) return;
    std::size_t after = pos + s.size();
    if (si + 1 < segs.size()) {
      for (std::size_t next = after + 1; next < j; ++next) {
        auto g = gaps;
        g.emplace_back(after, next);
        place(entry, segs, si + 1, next, j, std::move(g), out);
      }
      return;
    }
    // Build the occurrence with every combination of filler covers.
    std::vector<const std::vector<Insertion>*> choices;
    for (auto [a, b] : gaps) {
      choices.push_back(&cover(a, b));
      if (choices.back()->empty()) return;
    }
    const std::vector<Insertion>& rests = cover(after, j);
    if (rests.empty()) return;
    std::vector<std::size_t> pick(choices.size(), 0);
    for (;;) {
      Insertion head;
      std::vector<Config> fillers;
      head.terms.push_back(entry.term);
      head.entries.push_back(&entry);
      for (std::size_t g = 0; g < choices.size(); ++g) {
        const Insertion& f = (*choices[g])[pick[g]];
        fillers.push_back(f.config);
        head.terms.insert(head.terms.end(), f.terms.begin(), f.terms.end());
        head.entries.insert(head.entries.end(), f.entries.begin(), f.entries.end());
      }
      head.config.push_back(Item::occurrence(entry.type, std::move(fillers)));
      for (const Insertion& rest : rests) {
        Insertion x = head;
        append(x, rest);
        out.push_back(std::move(x));
      }
      std::size_t g = 0;
      for (; g < pick.size(); ++g) {
        if (++pick[g] < choices[g]->size()) break;
        pick[g] = 0;
      }
      if (g == pick.size()) break;
    }
  }
};

}  // namespace detail

// Every labelled configuration covering `tokens` exactly once.
inline std::vector<Insertion> insertions(const std::vector<std::string>& tokens, const Lexicon& lex) {
  detail::Inserter ins(lex, tokens);
  return ins.cover(0, tokens.size());
}

// Tokens that begin no entry and occur in no entry surface.
inline std::vector<std::string> unknown_tokens(const std::vector<std::string>& tokens, const Lexicon& lex) {
  std::set<std::string> known{lexical_separator};
  for (const auto& e : lex.entries) known.insert(e.surface.begin(), e.surface.end());
  std::vector<std::string> out;
  for (const auto& t : tokens)
    if (!known.count(t)) out.push_back(t);
  return out;
}

}  // namespace displace

#endif  // DISPLACE_LEXICON_HPP

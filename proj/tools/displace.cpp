// displace: parse sentences, prove and check hypersequents, eliminate Cuts
// and render proofs.
//
// Exit codes: 0 success; 1 no derivation or invalid proof; 2 lexical gap,
// usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "displace/checker.hpp"
#include "displace/cutelim.hpp"
#include "displace/lexicon.hpp"
#include "displace/parse.hpp"
#include "displace/proof_json.hpp"
#include "displace/prover.hpp"
#include "displace/render.hpp"
#include "displace/semantics.hpp"

#ifndef DISPLACE_DEFAULT_LEXICON
#define DISPLACE_DEFAULT_LEXICON "data/lexicon.txt"
#endif

using namespace displace;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string lexicon;
  std::string goal = "S";
  std::string format = "text";
  std::size_t max_proofs = 100000;
  double timeout = 60;
  bool no_dedup = false;
  bool show_proofs = false;
  bool trace = false;
  std::string input = "-";
  std::vector<std::string> words;
  std::string sequent;

  SearchLimits limits() const {
    SearchLimits l;
    l.max_proofs = max_proofs;
    l.time_budget_seconds = timeout;
    return l;
  }
};

std::string lexicon_path(const RunConfig& cfg) {
  if (!cfg.lexicon.empty()) return cfg.lexicon;
  if (const char* env = std::getenv("DISPLACE_LEXICON"); env && *env) return env;
  return DISPLACE_DEFAULT_LEXICON;
}

std::string read_input(const std::string& where) {
  if (where == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(where);
  if (!in) throw InputError("cannot open " + where);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& where) {
  try {
    return json::parse(read_input(where));
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Type goal_type(const RunConfig& cfg) {
  try {
    return parse_type(cfg.goal);
  } catch (const std::runtime_error& e) {
    throw InputError(std::string("bad goal type: ") + e.what());
  }
}

void warn_truncated(bool truncated) {
  if (truncated) std::cerr << "warning: search limits reached; results may be incomplete\n";
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string labelled_config(const Insertion& in) {
  // Occurrences in preorder paired with their lexical terms.
  std::string out = render_config(in.config);
  out += "   with ";
  for (std::size_t i = 0; i < in.terms.size(); ++i) out += (i ? "; " : "") + render_term(in.terms[i]);
  return out;
}

int cmd_parse(const RunConfig& cfg) {
  Lexicon lex;
  try {
    lex = load_lexicon(lexicon_path(cfg));
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  const Type goal = goal_type(cfg);
  const std::string sentence = join(cfg.words);
  ParseReport r = parse_sentence(sentence, lex, goal, cfg.limits(), !cfg.no_dedup);
  warn_truncated(r.truncated);

  if (r.insertions.empty()) {
    std::cerr << "lexical gap";
    if (!r.unknown.empty()) std::cerr << ": unknown tokens " << join(r.unknown, ", ");
    std::cerr << "\n";
    if (cfg.format == "json")
      std::cout << json{{"sentence", sentence}, {"tokens", r.tokens}, {"unknown", r.unknown}, {"readings", json::array()}}.dump(2)
                << "\n";
    return exit_input;
  }

  if (cfg.format == "json") {
    json doc;
    doc["sentence"] = sentence;
    doc["goal"] = goal->text();
    doc["tokens"] = r.tokens;
    json readings = json::array();
    for (const Reading& rd : r.readings)
      readings.push_back({{"term", render_term(rd.term)},
                          {"pretty", render_term(rd.term, TermStyle::unicode)},
                          {"proofs", rd.proofs}});
    doc["readings"] = readings;
    json ins = json::array();
    for (const Insertion& in : r.insertions) {
      json terms = json::array();
      for (const SemTerm& t : in.terms) terms.push_back(render_term(t));
      ins.push_back({{"sequent", render_sequent(Hypersequent{in.config, goal})}, {"terms", terms}});
    }
    doc["insertions"] = ins;
    json ders = json::array();
    for (const Derivation& d : r.derivations)
      ders.push_back({{"insertion", d.insertion}, {"reading", d.reading}, {"proof", proof_to_json(d.proof)}});
    doc["derivations"] = ders;
    doc["truncated"] = r.truncated;
    std::cout << doc.dump(2) << "\n";
  } else if (cfg.format == "latex") {
    std::vector<LatexItem> items;
    for (std::size_t i = 0; i < r.readings.size(); ++i)
      for (const Derivation& d : r.derivations)
        if (d.reading == i) {
          items.push_back({"Reading " + std::to_string(i + 1) + ": $" + render_term(r.readings[i].term, TermStyle::latex) + "$",
                           d.proof});
          break;
        }
    std::cout << latex_document(items);
  } else {
    std::cout << "sentence: " << sentence << "\n";
    for (std::size_t i = 0; i < r.insertions.size(); ++i)
      std::cout << "insertion " << i + 1 << ": " << labelled_config(r.insertions[i]) << "\n";
    std::cout << r.derivations.size() << " derivation(s), " << r.readings.size() << " reading(s)\n";
    for (std::size_t i = 0; i < r.readings.size(); ++i)
      std::cout << "  " << i + 1 << ". " << render_term(r.readings[i].term, TermStyle::unicode) << "   ["
                << r.readings[i].proofs << " proof(s)]\n";
    if (cfg.show_proofs)
      for (std::size_t i = 0; i < r.derivations.size(); ++i)
        std::cout << "\nderivation " << i + 1 << " (reading " << r.derivations[i].reading + 1 << ")\n"
                  << render_proof_text(r.derivations[i].proof);
  }
  if (r.readings.empty()) {
    std::cerr << "no derivation of " << goal->text() << "\n";
    return exit_failed;
  }
  return exit_ok;
}

int cmd_prove(const RunConfig& cfg) {
  Hypersequent goal;
  try {
    goal = parse_sequent(cfg.sequent);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  std::string why;
  if (!sequent_well_formed(goal, &why)) throw InputError(why);
  SearchResult r = Prover(cfg.limits()).prove_all(goal);
  warn_truncated(r.truncated);
  if (cfg.format == "json") {
    json proofs = json::array();
    for (const ProofPtr& p : r.proofs) proofs.push_back(proof_to_json(p));
    std::cout << json{{"sequent", render_sequent(goal)},
                      {"provable", !r.proofs.empty()},
                      {"count", r.proofs.size()},
                      {"truncated", r.truncated},
                      {"proofs", proofs}}
                     .dump(2)
              << "\n";
  } else if (cfg.format == "latex") {
    std::vector<LatexItem> items;
    for (const ProofPtr& p : r.proofs) items.push_back({"", p});
    std::cout << latex_document(items);
  } else {
    std::cout << render_sequent(goal) << ": " << r.proofs.size() << " proof(s)\n";
    for (std::size_t i = 0; i < r.proofs.size(); ++i)
      std::cout << "\nproof " << i + 1 << "\n" << render_proof_text(r.proofs[i]);
  }
  return r.proofs.empty() ? exit_failed : exit_ok;
}

std::vector<ProofPtr> load_proofs(const RunConfig& cfg, bool& format_error) {
  format_error = false;
  json doc = read_json(cfg.input);
  try {
    return proofs_from_document(doc);
  } catch (const ProofFormatError& e) {
    std::cerr << "invalid proof at " << e.what() << "\n";
    format_error = true;
    return {};
  }
}

int cmd_check(const RunConfig& cfg) {
  bool bad = false;
  std::vector<ProofPtr> proofs = load_proofs(cfg, bad);
  if (bad) return exit_failed;
  int status = exit_ok;
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    std::string prefix = proofs.size() > 1 ? "proofs[" + std::to_string(i) + "]." : "";
    CheckResult c = check_proof(proofs[i]);
    if (!c) {
      std::cerr << "invalid proof at " << prefix << c.text() << "\n";
      status = exit_failed;
    } else {
      std::cout << prefix << "root: ok " << render_sequent(proofs[i]->conclusion) << "\n";
    }
  }
  return status;
}

int cmd_elim(const RunConfig& cfg) {
  bool bad = false;
  std::vector<ProofPtr> proofs = load_proofs(cfg, bad);
  if (bad) return exit_failed;
  if (proofs.size() != 1) throw InputError("elim expects exactly one proof");
  CheckResult c = check_proof(proofs[0]);
  if (!c) {
    std::cerr << "invalid proof at " << c.text() << "\n";
    return exit_failed;
  }
  std::vector<CutStep> trace;
  ProofPtr out = eliminate(proofs[0], &trace);
  if (cfg.trace)
    for (const CutStep& s : trace) std::cerr << cut_step_to_json(s).dump() << "\n";
  if (cfg.format == "text") std::cout << render_proof_text(out);
  else if (cfg.format == "latex") std::cout << latex_document({{"", out}});
  else std::cout << proof_to_json(out).dump(2) << "\n";
  return exit_ok;
}

int cmd_render(const RunConfig& cfg) {
  bool bad = false;
  std::vector<ProofPtr> proofs = load_proofs(cfg, bad);
  if (bad) return exit_failed;
  if (cfg.format == "text") {
    for (std::size_t i = 0; i < proofs.size(); ++i) std::cout << (i ? "\n" : "") << render_proof_text(proofs[i]);
  } else if (cfg.format == "json") {
    for (const ProofPtr& p : proofs) std::cout << proof_to_json(p).dump(2) << "\n";
  } else {
    std::vector<LatexItem> items;
    for (const ProofPtr& p : proofs) items.push_back({"", p});
    std::cout << latex_document(items);
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prover and parser for the displacement calculus"};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::string> formats = {"text", "latex", "json"};

  auto search_options = [&](CLI::App* sub) {
    sub->add_option("--max-proofs", cfg.max_proofs, "Proof cap per goal")->check(CLI::PositiveNumber);
    sub->add_option("--timeout", cfg.timeout, "Search time budget in seconds")->check(CLI::PositiveNumber);
  };

  CLI::App* parse = app.add_subcommand("parse", "Parse a sentence and report its readings");
  parse->add_option("sentence", cfg.words, "Sentence tokens")->required();
  parse->add_option("--lexicon", cfg.lexicon, "Lexicon file (default: $DISPLACE_LEXICON or the shipped one)");
  parse->add_option("--goal", cfg.goal, "Goal type")->capture_default_str();
  parse->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  parse->add_flag("--no-dedup", cfg.no_dedup, "Report one reading per derivation");
  parse->add_flag("--proofs", cfg.show_proofs, "Print every derivation (text format)");
  search_options(parse);

  CLI::App* prove = app.add_subcommand("prove", "Find all cut-free proofs of a hypersequent");
  prove->add_option("sequent", cfg.sequent, "Hypersequent, e.g. \"N, N\\S => S\"")->required();
  prove->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  search_options(prove);

  CLI::App* check = app.add_subcommand("check", "Check a proof JSON document");
  check->add_option("input", cfg.input, "File, or - for stdin")->capture_default_str();

  CLI::App* elim = app.add_subcommand("elim", "Eliminate cuts from a proof JSON document");
  elim->add_option("input", cfg.input, "File, or - for stdin")->capture_default_str();
  elim->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
  elim->add_flag("--trace", cfg.trace, "Write one JSON line per reduction step to stderr");

  CLI::App* render = app.add_subcommand("render", "Render a proof JSON document");
  render->add_option("input", cfg.input, "File, or - for stdin")->capture_default_str();
  render->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*parse) return cmd_parse(cfg);
    if (*prove) return cmd_prove(cfg);
    if (*check) return cmd_check(cfg);
    if (*elim) {
      if (elim->count("--format") == 0) cfg.format = "json";
      return cmd_elim(cfg);
    }
    if (*render) {
      if (render->count("--format") == 0) cfg.format = "latex";
      return cmd_render(cfg);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "displace/checker.hpp"
#include "displace/cutelim.hpp"
#include "displace/proof_json.hpp"
#include "displace/prover.hpp"
#include "displace/semantics.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace displace;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("displace_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CliRun cli(const std::string& args, const std::string& stdin_text = "") {
  fs::path in = scratch() / "stdin", out = scratch() / "stdout", err = scratch() / "stderr";
  std::ofstream(in) << stdin_text;
  std::string cmd = quote(DISPLACE_CLI_PATH) + " " + args + " < " + quote(in.string()) + " > " + quote(out.string()) +
                    " 2> " + quote(err.string());
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

void report(int n, const std::string& title, const Outcome& o, int& failures) {
  std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title;
  if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
  std::cout << std::endl;
  failures += !o.pass;
}

// Connective count of a rendered sequent, read off the text.
int text_weight(const std::string& s) {
  int n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\' || c == '/' || c == '*' || c == '^' || c == '!' || c == 'I' || c == 'J') ++n;
    if (s.compare(i, 3, "(o)") == 0) ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------

Outcome golden_readings(std::vector<ProofPtr>& proofs) {
  Outcome o;
  double slowest = 0;
  std::size_t readings = 0;
  for (const fixtures::Golden& g : fixtures::golden()) {
    auto t0 = Clock::now();
    CliRun r = cli("parse " + quote(g.sentence) + " --goal " + quote(g.goal) + " --format json");
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    if (r.code != 0) {
      o.fail(g.name + ": exit " + std::to_string(r.code) + " " + r.err);
      continue;
    }
    if (dt > g.budget_seconds) o.fail(g.name + ": " + std::to_string(dt) + " s over budget");
    json doc = json::parse(r.out);
    if (doc["truncated"].get<bool>()) o.fail(g.name + ": search truncated");
    std::vector<SemTerm> got;
    for (const json& rd : doc["readings"]) got.push_back(parse_term(rd["term"].get<std::string>()));
    readings += got.size();
    fixtures::ReadingDiff d = fixtures::compare_readings(got, g.readings);
    if (!d.missing.empty()) o.fail(g.name + ": missing " + d.missing[0]);
    if (!d.extra.empty()) o.fail(g.name + ": unexpected " + d.extra[0]);
    for (const json& dv : doc["derivations"]) proofs.push_back(proof_from_json(dv["proof"]));
  }
  if (o.pass) {
    std::ostringstream s;
    s << fixtures::golden().size() << " sentences, " << readings << " readings, " << proofs.size()
      << " derivations, slowest " << slowest << " s";
    o.detail = s.str();
  }
  return o;
}

Outcome weight_invariant(const std::vector<ProofPtr>& proofs) {
  Outcome o;
  std::size_t nodes = 0;
  for (const ProofPtr& p : proofs) {
    if (std::string bad = weight_violation(p); !bad.empty()) o.fail("weight_violation at " + bad);
    for_each_node(p, [&](const ProofNode& n, const std::string& path) {
      if (n.premises.empty()) return;
      ++nodes;
      int sum = 0;
      for (const ProofPtr& q : n.premises) sum += text_weight(render_sequent(q->conclusion));
      if (sum != text_weight(render_sequent(n.conclusion)) - 1) o.fail("text weight mismatch at " + path);
    });
  }
  if (proofs.empty()) o.fail("no proofs");
  if (o.pass) o.detail = std::to_string(nodes) + " inference nodes in " + std::to_string(proofs.size()) + " proofs";
  return o;
}

Outcome subformula_property(const std::vector<ProofPtr>& golden, const std::vector<ProofPtr>& eliminated) {
  Outcome o;
  for (const ProofPtr& p : golden)
    if (!cut_free(p) || !subformula_check(p)) o.fail("derivation of " + render_sequent(p->conclusion));
  for (const ProofPtr& p : eliminated)
    if (!cut_free(p) || !subformula_check(p)) o.fail("eliminated proof of " + render_sequent(p->conclusion));
  if (golden.empty() || eliminated.empty()) o.fail("no proofs to check");
  if (o.pass) o.detail = std::to_string(golden.size() + eliminated.size()) + " cut-free proofs";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  auto t0 = Clock::now();
  const std::vector<std::string> atoms{"N", "S"};
  oracle::Closure closure(3, atoms);
  std::vector<Hypersequent> space = oracle::sequent_space(3, 3, atoms);
  Prover prover;
  std::size_t provable = 0;
  for (const Hypersequent& s : space) {
    bool p = prover.provable(s);
    provable += p;
    if (p != closure.contains(s)) o.fail("disagree on " + render_sequent(s));
  }
  double dt = seconds_since(t0);
  if (dt > 600) o.fail("took " + std::to_string(dt) + " s");
  if (o.pass) {
    std::ostringstream s;
    s << space.size() << " sequents, " << provable << " provable, " << dt << " s";
    o.detail = s.str();
  }
  return o;
}

Outcome cut_elimination(std::vector<ProofPtr>& eliminated) {
  Outcome o;
  std::vector<fixtures::CutFixture> fx = fixtures::cut_fixtures();
  if (fx.size() < 50) o.fail("only " + std::to_string(fx.size()) + " fixtures");
  std::size_t steps = 0;
  for (const fixtures::CutFixture& f : fx) {
    try {
      if (CheckResult c = check_proof(f.proof); !c) {
        o.fail(f.name + ": fixture invalid " + c.text());
        continue;
      }
      SemTerm before = fixtures::reading_of(f.proof, f.lexical);
      ProofPtr p = f.proof;
      while (!cut_free(p)) {
        CutStep s;
        p = reduce_once(p, &s);
        ++steps;
        for (int d : s.degrees_after)
          if (d >= s.degree_before) o.fail(f.name + ": " + s.kind + " did not lower the degree");
        if (CheckResult c = check_proof(p); !c) o.fail(f.name + ": after " + s.kind + ": " + c.text());
      }
      if (!(p->conclusion == f.proof->conclusion)) o.fail(f.name + ": endsequent changed");
      if (!alpha_eq(before, fixtures::reading_of(p, f.lexical))) o.fail(f.name + ": semantics changed");
      eliminated.push_back(p);
    } catch (const std::exception& e) {
      o.fail(f.name + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(fx.size()) + " fixtures, " + std::to_string(steps) + " reduction steps";
  return o;
}

Outcome lambek_subsumption() {
  Outcome o;
  struct Case {
    const char* seq;
    bool provable;
    Rule axiom;  // the one-node proof expected, or id when any proof will do
  };
  const std::vector<Case> cases = {{"N => S/(N\\S)", true, Rule::id},
                                   {"S/(N\\S) => N", false, Rule::id},
                                   {"=> I", true, Rule::unit_i_r},
                                   {"[] => J", true, Rule::unit_j_r}};
  double slowest = 0;
  for (const Case& c : cases) {
    auto t0 = Clock::now();
    SearchResult r = prove_all(parse_sequent(c.seq));
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    if (dt >= 1.0) o.fail(std::string(c.seq) + " took " + std::to_string(dt) + " s");
    if (r.proofs.empty() == c.provable) o.fail(std::string(c.seq) + (c.provable ? " not proved" : " proved"));
    if (c.axiom != Rule::id) {
      bool axiom = false;
      for (const ProofPtr& p : r.proofs) axiom = axiom || (p->rule == c.axiom && p->premises.empty());
      if (!axiom) o.fail(std::string(c.seq) + " lacks the axiom proof");
    }
  }
  if (o.pass) o.detail = "slowest " + std::to_string(slowest) + " s";
  return o;
}

// ---------------------------------------------------------------------------
// Mutation suite

struct Mutation {
  std::string kind;
  std::string node;
  json doc;
};

json* node_at(json& root, const std::string& path) {
  json* n = &root;
  std::size_t pos = 4;  // past "root"
  while (pos < path.size()) {
    std::size_t next = path.find('.', pos + 1);
    int i = std::stoi(path.substr(pos + 1, next - pos - 1));
    n = &(*n)["premises"][static_cast<std::size_t>(i)];
    pos = next == std::string::npos ? path.size() : next;
  }
  return n;
}

// Swaps one standalone N for S or S for N in `s`; false if there is none.
bool swap_atom(std::string& s, std::mt19937& rng) {
  std::vector<std::size_t> at;
  auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  for (std::size_t i = 0; i < s.size(); ++i)
    if ((s[i] == 'N' || s[i] == 'S') && (i == 0 || !ident(s[i - 1])) && (i + 1 == s.size() || !ident(s[i + 1])))
      at.push_back(i);
  if (at.empty()) return false;
  std::size_t i = at[std::uniform_int_distribution<std::size_t>(0, at.size() - 1)(rng)];
  s[i] = s[i] == 'N' ? 'S' : 'N';
  return true;
}

std::vector<Mutation> mutations(const std::vector<ProofPtr>& sources, std::size_t per_kind) {
  std::mt19937 rng(20240);
  std::vector<Mutation> out;
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto nodes_of = [](const ProofPtr& p, bool need_premises) {
    std::vector<std::string> paths;
    for_each_node(p, [&](const ProofNode& n, const std::string& path) {
      if (!need_premises || !n.premises.empty()) paths.push_back(path);
    });
    return paths;
  };
  for (const char* kind : {"rule-renamed", "premise-dropped", "type-swapped"}) {
    std::size_t made = 0;
    for (std::size_t attempt = 0; made < per_kind && attempt < 100 * per_kind; ++attempt) {
      const ProofPtr& src = sources[pick(sources.size())];
      std::string k = kind;
      std::vector<std::string> paths = nodes_of(src, k == "premise-dropped");
      if (paths.empty()) continue;
      std::string path = paths[pick(paths.size())];
      json doc = proof_to_json(src);
      json& n = *node_at(doc, path);
      if (k == "rule-renamed") {
        Rule old = *rule_from_name(n["rule"].get<std::string>());
        std::vector<std::string> same;
        for (auto [r, name] : rule_names)
          if (r != old && rule_arity(r) == rule_arity(old)) same.emplace_back(name);
        n["rule"] = same[pick(same.size())];
      } else if (k == "premise-dropped") {
        json& prem = n["premises"];
        prem.erase(prem.begin() + static_cast<std::ptrdiff_t>(pick(prem.size())));
      } else {
        std::string c = n["conclusion"].get<std::string>();
        if (!swap_atom(c, rng)) continue;
        n["conclusion"] = c;
      }
      out.push_back({k, path, doc});
      ++made;
    }
  }
  return out;
}

Outcome mutation_suite(const std::vector<ProofPtr>& sources) {
  Outcome o;
  // Prefer the larger derivations as mutation sources.
  std::vector<ProofPtr> big;
  for (const ProofPtr& p : sources)
    if (proof_size(p) >= 5) big.push_back(p);
  if (big.empty()) {
    o.fail("no source proofs");
    return o;
  }
  std::vector<Mutation> ms = mutations(big, 10);
  if (ms.size() < 20) o.fail("only " + std::to_string(ms.size()) + " mutations");
  for (const Mutation& m : ms) {
    fs::path file = scratch() / "mutant.json";
    std::ofstream(file) << m.doc.dump(2);
    CliRun r = cli("check " + quote(file.string()));
    bool precise = r.err.find("at " + m.node + " (") != std::string::npos ||
                   r.err.find("at " + m.node + ":") != std::string::npos;
    if (r.code != 1) o.fail(m.kind + " at " + m.node + ": exit " + std::to_string(r.code));
    else if (!precise) o.fail(m.kind + " at " + m.node + ": diagnostic was '" + r.err + "'");
  }
  // The unmutated sources must still pass.
  for (std::size_t i = 0; i < big.size() && i < 5; ++i) {
    fs::path file = scratch() / "clean.json";
    std::ofstream(file) << proof_to_json(big[i]).dump();
    if (cli("check " + quote(file.string())).code != 0) o.fail("clean proof rejected");
  }
  if (o.pass) o.detail = std::to_string(ms.size()) + " mutants rejected at the mutated node";
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  std::vector<ProofPtr> golden_proofs, eliminated;

  auto guarded = [&](int n, const std::string& title, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    report(n, title, o, failures);
  };

  guarded(1, "golden readings", [&] { return golden_readings(golden_proofs); });
  guarded(2, "weight-decrease invariant", [&] { return weight_invariant(golden_proofs); });
  Outcome elim;
  try {
    elim = cut_elimination(eliminated);
  } catch (const std::exception& e) {
    elim.fail(std::string("exception: ") + e.what());
  }
  guarded(3, "subformula property", [&] { return subformula_property(golden_proofs, eliminated); });
  guarded(4, "oracle equivalence", [&] { return oracle_agreement(); });
  report(5, "cut elimination", elim, failures);
  guarded(6, "Lambek subsumption", [&] { return lambek_subsumption(); });
  guarded(7, "prover/checker independence", [&] { return mutation_suite(golden_proofs); });

  std::error_code ec;
  fs::remove_all(scratch(), ec);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}

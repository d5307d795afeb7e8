#include <gtest/gtest.h>

#include <set>
#include <string>
#include <vector>

#include "displace/checker.hpp"
#include "displace/cutelim.hpp"
#include "displace/prover.hpp"
#include "displace/semantics.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace displace;
using testsupport::C;
using testsupport::H;
using testsupport::T;

namespace {

// Connective count read off the ASCII rendering, independent of the
// weight functions.
int weight_by_text(const std::string& s) {
  int n = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\' || c == '/' || c == '*' || c == '^' || c == '!' || c == 'I' || c == 'J') ++n;
    if (s.compare(i, 3, "(o)") == 0) ++n;
  }
  return n;
}

std::vector<ProofPtr> proofs_of(const std::string& seq) { return prove_all(H(seq)).proofs; }

ProofPtr ending_in(const std::string& seq, Rule r) {
  for (const ProofPtr& p : proofs_of(seq))
    if (p->rule == r) return p;
  ADD_FAILURE() << "no proof of " << seq << " ending in " << rule_name(r);
  return nullptr;
}

// Cuts `left` into each proof of `right_seq` ending in `r` at index `at` of
// the top level and returns the first whose reduction is the principal case.
ProofPtr principal_fixture(const ProofPtr& left, const std::string& right_seq, Rule r, int at) {
  for (const ProofPtr& p2 : proofs_of(right_seq)) {
    if (p2->rule != r) continue;
    ProofPtr cut = splice_cut(left, p2, OccRef{{}, at});
    CutStep s;
    reduce_once(cut, &s);
    if (s.kind.rfind("principal:", 0) == 0) return cut;
  }
  ADD_FAILURE() << "no principal fixture for " << right_seq;
  return nullptr;
}

// Runs elimination one step at a time, checking every intermediate proof.
void eliminate_checked(ProofPtr p, std::vector<CutStep>& trace) {
  const Hypersequent end = p->conclusion;
  while (!cut_free(p)) {
    std::vector<std::size_t> path;
    CutStep s;
    p = reduce_once(p, &s);
    for (int d : s.degrees_after) ASSERT_LT(d, s.degree_before) << s.kind;
    CheckResult c = check_proof(p);
    ASSERT_TRUE(c.ok) << s.kind << " at " << s.node << ": " << c.text();
    ASSERT_EQ(render_sequent(p->conclusion), render_sequent(end));
    trace.push_back(s);
    ASSERT_LT(trace.size(), 100000u);
  }
}

}  // namespace

TEST(Degree, IdentityIntoIdentityIsZero) {
  ProofPtr id = proofs_of("N => N").at(0);
  ProofPtr cut = splice_cut(id, id, OccRef{{}, 0});
  EXPECT_EQ(cut_degree(*cut), 0);
  EXPECT_TRUE(check_proof(cut).ok);
}

TEST(Degree, RelativeClauseBodyCut) {
  // Gamma: the relative body; A: (S^N)(o)I; context: the noun and pronoun.
  const std::string gamma = "N, (N\\S)/N, (N\\S)\\(N\\S)";
  const std::string a = "(S^N)(o)I";
  const std::string delta = "CN, (CN\\CN)/((S^N)(o)I)";
  ProofPtr p1 = proofs_of(gamma + " => " + a).at(0);
  ProofPtr p2 = proofs_of(delta + ", " + a + " => CN").at(0);
  ProofPtr cut = splice_cut(p1, p2, OccRef{{}, 2});
  EXPECT_EQ(render_sequent(cut->conclusion), delta + ", " + gamma + " => CN");
  int expected = weight_by_text(gamma) + weight_by_text(delta) + weight_by_text(a) + weight_by_text("CN");
  EXPECT_EQ(cut_degree(*cut), expected);
  EXPECT_TRUE(check_proof(cut).ok);
}

TEST(Splice, RejectsWrongFormula) {
  ProofPtr n = proofs_of("N => N").at(0);
  ProofPtr s = proofs_of("S => S").at(0);
  EXPECT_THROW(splice_cut(n, s, OccRef{{}, 0}), CutError);
}

TEST(Splice, IdiomDeterminerIntoFiller) {
  ProofPtr np = proofs_of("N/CN, CN => N").at(0);
  ProofPtr rest = proofs_of("N, (N\\S)^N{N} => S").at(0);
  ProofPtr cut = splice_cut(np, rest, OccRef{{{1, 0}}, 0});
  EXPECT_EQ(cut->conclusion, H("N, (N\\S)^N{N/CN, CN} => S"));
  EXPECT_TRUE(check_proof(cut).ok);
}

TEST(Reduce, NoCutThrows) {
  ProofPtr id = proofs_of("N => N").at(0);
  EXPECT_THROW(reduce_once(id), CutError);
}

TEST(Reduce, CutFreeInputUnchanged) {
  ProofPtr p = proofs_of("N, (N\\S)/N, N => S").at(0);
  EXPECT_TRUE(same_proof(eliminate(p), p));
}

TEST(Reduce, AxiomCases) {
  ProofPtr id = proofs_of("N => N").at(0);
  CutStep s;
  ProofPtr r = reduce_once(splice_cut(id, id, OccRef{{}, 0}), &s);
  EXPECT_EQ(s.kind, "axiom-left");
  EXPECT_EQ(r->rule, Rule::id);
  EXPECT_TRUE(s.degrees_after.empty());

  ProofPtr body = proofs_of("N, N\\S => S").at(0);
  ProofPtr sid = proofs_of("S => S").at(0);
  r = reduce_once(splice_cut(body, sid, OccRef{{}, 0}), &s);
  EXPECT_EQ(s.kind, "axiom-right");
  EXPECT_TRUE(same_proof(r, body));
}

TEST(Reduce, UnitIPrincipalDeletesCut) {
  ProofPtr ir = ending_in("=> I", Rule::unit_i_r);
  ProofPtr cut = principal_fixture(ir, "N, I => N", Rule::unit_i_l, 1);
  ASSERT_TRUE(cut);
  CutStep s;
  ProofPtr r = reduce_once(cut, &s);
  EXPECT_EQ(s.kind, "principal:I");
  EXPECT_TRUE(s.degrees_after.empty());
  EXPECT_TRUE(same_proof(r, cut->premises[1]->premises[0]));
  EXPECT_TRUE(check_proof(r).ok);
}

TEST(Reduce, UnitJPrincipalDeletesCut) {
  ProofPtr jr = ending_in("[] => J", Rule::unit_j_r);
  ProofPtr cut = principal_fixture(jr, "J{[]} => J", Rule::unit_j_l, 0);
  ASSERT_TRUE(cut);
  CutStep s;
  ProofPtr r = reduce_once(cut, &s);
  EXPECT_EQ(s.kind, "principal:J");
  EXPECT_EQ(r->conclusion, H("[] => J"));
  EXPECT_TRUE(check_proof(r).ok);
}

struct PrincipalCase {
  const char* left;
  Rule left_rule;
  const char* right;
  Rule right_rule;
  int at;
  const char* kind;
  std::size_t new_cuts;
};

class Principal : public ::testing::TestWithParam<PrincipalCase> {};

TEST_P(Principal, ReducesToSmallerCuts) {
  const PrincipalCase& c = GetParam();
  ProofPtr left = ending_in(c.left, c.left_rule);
  ASSERT_TRUE(left);
  ProofPtr cut = principal_fixture(left, c.right, c.right_rule, c.at);
  ASSERT_TRUE(cut);
  CutStep s;
  ProofPtr r = reduce_once(cut, &s);
  EXPECT_EQ(s.kind, c.kind);
  EXPECT_EQ(count_cuts(r), c.new_cuts);
  EXPECT_EQ(s.degrees_after.size(), c.new_cuts);
  for (int d : s.degrees_after) EXPECT_LT(d, s.degree_before);
  EXPECT_TRUE(check_proof(r).ok) << check_proof(r).text();
  EXPECT_EQ(r->conclusion, cut->conclusion);
  std::vector<CutStep> trace;
  eliminate_checked(r, trace);
}

INSTANTIATE_TEST_SUITE_P(
    Connectives, Principal,
    ::testing::Values(
        PrincipalCase{"N\\S => N\\S", Rule::under_r, "N, N\\S => S", Rule::under_l, 1, "principal:\\", 2},
        PrincipalCase{"S/N => S/N", Rule::over_r, "S/N, N => S", Rule::over_l, 0, "principal:/", 2},
        PrincipalCase{"N, S => N*S", Rule::product_r, "N*S => N*S", Rule::product_l, 0, "principal:*", 2},
        PrincipalCase{"N => (S^N)!S", Rule::infix_r, "N, (N\\S)/N, (S^N)!S => S", Rule::infix_l, 2,
                      "principal:!", 2},
        PrincipalCase{"(S^N){[]} => S^N", Rule::extract_r, "(S^N){N} => S", Rule::extract_l, 0, "principal:^", 2},
        PrincipalCase{"(S^N){N} => (S^N)(o)N", Rule::disc_product_r, "(S^N)(o)N => S", Rule::disc_product_l, 0,
                      "principal:(o)", 2}),
    [](const ::testing::TestParamInfo<PrincipalCase>& info) {
      switch (info.param.right_rule) {
        case Rule::under_l: return std::string("Under");
        case Rule::over_l: return std::string("Over");
        case Rule::product_l: return std::string("Product");
        case Rule::infix_l: return std::string("Infix");
        case Rule::extract_l: return std::string("Extract");
        default: return std::string("DiscProduct");
      }
    });

TEST(Reduce, PermuteLeftMovesCutUp) {
  // The left premise ends in \L, so the Cut permutes into its second premise.
  ProofPtr p1 = ending_in("N, N\\S => S", Rule::under_l);
  ProofPtr p2 = ending_in("S, S\\S => S", Rule::under_l);
  ProofPtr cut = splice_cut(p1, p2, OccRef{{}, 0});
  CutStep s;
  ProofPtr r = reduce_once(cut, &s);
  EXPECT_EQ(s.kind, "permute-left:\\L");
  EXPECT_EQ(r->rule, Rule::under_l);
  EXPECT_EQ(count_cuts(r), 1u);
  EXPECT_TRUE(check_proof(r).ok) << check_proof(r).text();
}

TEST(Reduce, PermuteRightMovesCutUp) {
  // The Cut formula sits in the context of a right rule.
  ProofPtr p1 = ending_in("N\\S => N\\S", Rule::under_r);
  ProofPtr p2 = ending_in("N\\S => N\\S", Rule::under_r);
  ProofPtr cut = splice_cut(p1, p2, OccRef{{}, 0});
  CutStep s;
  ProofPtr r = reduce_once(cut, &s);
  EXPECT_EQ(s.kind, "permute-right:\\R");
  EXPECT_EQ(r->rule, Rule::under_r);
  EXPECT_TRUE(check_proof(r).ok) << check_proof(r).text();
}

TEST(Eliminate, TopmostLeftmostFirst) {
  ProofPtr id = proofs_of("N => N").at(0);
  ProofPtr inner = splice_cut(id, id, OccRef{{}, 0});
  ProofPtr body = ending_in("N, N\\S => S", Rule::under_l);
  ProofPtr outer = splice_cut(inner, body, OccRef{{}, 0});
  CutStep s;
  reduce_once(outer, &s);
  EXPECT_EQ(s.node, "root.0");
  std::vector<CutStep> trace;
  ProofPtr r = eliminate(outer, &trace);
  EXPECT_TRUE(cut_free(r));
  EXPECT_EQ(trace.size(), 2u);
}

TEST(Eliminate, WorkedSentenceFixtures) {
  std::vector<fixtures::CutFixture> fx = fixtures::cut_fixtures();
  ASSERT_GE(fx.size(), 50u);
  std::set<std::string> kinds;
  for (const fixtures::CutFixture& f : fx) {
    SCOPED_TRACE(f.name);
    ASSERT_TRUE(check_proof(f.proof).ok) << check_proof(f.proof).text();
    SemTerm before = fixtures::reading_of(f.proof, f.lexical);
    std::vector<CutStep> trace;
    eliminate_checked(f.proof, trace);
    ProofPtr r = eliminate(f.proof);
    EXPECT_TRUE(cut_free(r));
    EXPECT_TRUE(subformula_check(r));
    EXPECT_EQ(r->conclusion, f.proof->conclusion);
    SemTerm after = fixtures::reading_of(r, f.lexical);
    EXPECT_TRUE(alpha_eq(before, after)) << render_term(before) << " vs " << render_term(after);
    for (const CutStep& s : trace) kinds.insert(s.kind.substr(0, s.kind.find(':')));
  }
  EXPECT_TRUE(kinds.count("permute-left"));
  EXPECT_TRUE(kinds.count("permute-right"));
  EXPECT_TRUE(kinds.count("principal"));
  EXPECT_TRUE(kinds.count("axiom-left") || kinds.count("axiom-right"));
}

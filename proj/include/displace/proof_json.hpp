// JSON interchange for proofs and cut-elimination traces.
//
// A node is
//   {"rule": "\\L", "conclusion": "N, N\\S => S", "principal": "N\\S", "k": 0,
//    "site": {"path": [[1, 0]], "start": 0, "end": 1}, "focus": {...},
//    "extraction": "...", "premises": [...]}
// Paths are (item, filler) index pairs from the top level down.

#ifndef DISPLACE_PROOF_JSON_HPP
#define DISPLACE_PROOF_JSON_HPP

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "displace/config.hpp"
#include "displace/cutelim.hpp"
#include "displace/proof.hpp"

namespace displace {

using json = nlohmann::ordered_json;

// Malformed proof document; `node` is the path of the offending node.
class ProofFormatError : public std::runtime_error {
 public:
  ProofFormatError(std::string node, const std::string& what)
      : std::runtime_error(node + ": " + what), node_(std::move(node)) {}
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

inline json span_to_json(const SpanRef& s) {
  json path = json::array();
  for (auto [item, filler] : s.path) path.push_back({item, filler});
  return {{"path", path}, {"start", s.start}, {"end", s.end}};
}

inline json proof_to_json(const ProofPtr& p) {
  json j;
  j["rule"] = rule_name(p->rule);
  j["conclusion"] = render_sequent(p->conclusion);
  j["principal"] = p->meta.principal ? json(p->meta.principal->text()) : json(nullptr);
  j["k"] = p->meta.k;
  j["site"] = span_to_json(p->meta.site);
  j["focus"] = span_to_json(p->meta.focus);
  if (!p->meta.extraction.empty()) j["extraction"] = p->meta.extraction;
  json prem = json::array();
  for (const ProofPtr& q : p->premises) prem.push_back(proof_to_json(q));
  j["premises"] = prem;
  return j;
}

namespace detail {

inline SpanRef span_from_json(const json& j, const std::string& node, const char* field) {
  if (!j.is_object()) throw ProofFormatError(node, std::string("field '") + field + "' must be an object");
  SpanRef s;
  try {
    for (const json& step : j.at("path")) {
      if (!step.is_array() || step.size() != 2) throw ProofFormatError(node, std::string("bad path step in ") + field);
      s.path.emplace_back(step[0].get<int>(), step[1].get<int>());
    }
    s.start = j.at("start").get<int>();
    s.end = j.at("end").get<int>();
  } catch (const json::exception& e) {
    throw ProofFormatError(node, std::string("bad ") + field + ": " + e.what());
  }
  return s;
}

inline ProofPtr proof_from_json(const json& j, const std::string& node) {
  if (!j.is_object()) throw ProofFormatError(node, "proof node must be an object");
  auto text = [&](const char* field) -> std::string {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) throw ProofFormatError(node, std::string("missing string field '") + field + "'");
    return it->get<std::string>();
  };
  std::string name = text("rule");
  auto rule = rule_from_name(name);
  if (!rule) throw ProofFormatError(node, "unknown rule '" + name + "'");

  Hypersequent conclusion;
  try {
    conclusion = parse_sequent(text("conclusion"));
  } catch (const std::runtime_error& e) {
    throw ProofFormatError(node, std::string("conclusion: ") + e.what());
  }

  RuleMeta m;
  if (auto it = j.find("principal"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ProofFormatError(node, "field 'principal' must be a string");
    try {
      m.principal = parse_type(it->get<std::string>());
    } catch (const std::runtime_error& e) {
      throw ProofFormatError(node, std::string("principal: ") + e.what());
    }
  }
  if (auto it = j.find("k"); it != j.end()) {
    if (!it->is_number_integer()) throw ProofFormatError(node, "field 'k' must be an integer");
    m.k = it->get<int>();
  }
  if (auto it = j.find("site"); it != j.end()) m.site = span_from_json(*it, node, "site");
  if (auto it = j.find("focus"); it != j.end()) m.focus = span_from_json(*it, node, "focus");
  if (auto it = j.find("extraction"); it != j.end() && it->is_string()) m.extraction = it->get<std::string>();

  std::vector<ProofPtr> prem;
  if (auto it = j.find("premises"); it != j.end()) {
    if (!it->is_array()) throw ProofFormatError(node, "field 'premises' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) prem.push_back(proof_from_json((*it)[i], node + "." + std::to_string(i)));
  }
  return make_proof(std::move(conclusion), *rule, std::move(m), std::move(prem));
}

}  // namespace detail

inline ProofPtr proof_from_json(const json& j) { return detail::proof_from_json(j, "root"); }

// Accepts a bare proof node, a document with a "proof" field, or one with a
// "proofs" array as written by `displace prove`.
inline std::vector<ProofPtr> proofs_from_document(const json& doc) {
  if (doc.is_object() && !doc.contains("rule")) {
    if (auto it = doc.find("proof"); it != doc.end()) return {proof_from_json(*it)};
    if (auto it = doc.find("proofs"); it != doc.end() && it->is_array()) {
      std::vector<ProofPtr> out;
      for (std::size_t i = 0; i < it->size(); ++i) {
        try {
          out.push_back(proof_from_json((*it)[i]));
        } catch (const ProofFormatError& e) {
          throw ProofFormatError("proofs[" + std::to_string(i) + "]." + e.node(),
                                 std::string(e.what()).substr(e.node().size() + 2));
        }
      }
      return out;
    }
  }
  return {proof_from_json(doc)};
}

inline json cut_step_to_json(const CutStep& s) {
  return {{"case", s.kind}, {"node", s.node}, {"degree_before", s.degree_before}, {"degrees_after", s.degrees_after}};
}

}  // namespace displace

#endif  // DISPLACE_PROOF_JSON_HPP

// Proof rendering: an indented text tree and bussproofs LaTeX.

#ifndef DISPLACE_RENDER_HPP
#define DISPLACE_RENDER_HPP

#include <string>
#include <vector>

#include "displace/config.hpp"
#include "displace/proof.hpp"

namespace displace {

inline std::string rule_latex(Rule r, int k) {
  std::string sub = k > 1 ? "_{" + std::to_string(k) + "}" : "";
  switch (r) {
    case Rule::id: return "id";
    case Rule::under_l: return "\\backslash L";
    case Rule::under_r: return "\\backslash R";
    case Rule::over_l: return "/L";
    case Rule::over_r: return "/R";
    case Rule::product_l: return "\\bullet L";
    case Rule::product_r: return "\\bullet R";
    case Rule::unit_i_l: return "IL";
    case Rule::unit_i_r: return "IR";
    case Rule::infix_l: return "\\downarrow" + sub + " L";
    case Rule::infix_r: return "\\downarrow" + sub + " R";
    case Rule::extract_l: return "\\uparrow" + sub + " L";
    case Rule::extract_r: return "\\uparrow" + sub + " R";
    case Rule::disc_product_l: return "\\odot" + sub + " L";
    case Rule::disc_product_r: return "\\odot" + sub + " R";
    case Rule::unit_j_l: return "JL";
    case Rule::unit_j_r: return "JR";
    case Rule::cut: return "Cut";
  }
  return "?";
}

namespace detail {

inline void text_tree_into(const ProofPtr& p, const std::string& indent, std::string& out) {
  out += indent + render_sequent(p->conclusion) + "   [" + rule_name(p->rule);
  if (rule_indexed(p->rule) && p->meta.k > 1) out += " k=" + std::to_string(p->meta.k);
  out += "]\n";
  for (const ProofPtr& q : p->premises) text_tree_into(q, indent + "  ", out);
}

inline void bussproofs_into(const ProofPtr& p, std::string& out) {
  for (const ProofPtr& q : p->premises) bussproofs_into(q, out);
  if (p->premises.empty()) out += "\\AxiomC{}\n";
  out += "\\RightLabel{\\scriptsize $" + rule_latex(p->rule, p->meta.k) + "$}\n";
  out += p->premises.size() == 2 ? "\\BinaryInfC{$" : "\\UnaryInfC{$";
  out += render_sequent(p->conclusion, Notation::latex) + "$}\n";
}

}  // namespace detail

// Conclusion first, premises indented below it.
inline std::string render_proof_text(const ProofPtr& p) {
  std::string out;
  detail::text_tree_into(p, "", out);
  return out;
}

inline std::string render_proof_bussproofs(const ProofPtr& p) {
  std::string out = "\\begin{prooftree}\n";
  detail::bussproofs_into(p, out);
  out += "\\end{prooftree}\n";
  return out;
}

struct LatexItem {
  std::string caption;  // LaTeX, may be empty
  ProofPtr proof;
};

// Complete document; wide proofs get a landscape page of their own.
inline std::string latex_document(const std::vector<LatexItem>& items) {
  std::string out =
      "\\documentclass{article}\n"
      "\\usepackage[a3paper,landscape,margin=1cm]{geometry}\n"
      "\\usepackage{amsmath,amssymb}\n"
      "\\usepackage{bussproofs}\n"
      "\\EnableBpAbbreviations\n"
      "\\begin{document}\n";
  for (const LatexItem& it : items) {
    if (!it.caption.empty()) out += "\\noindent " + it.caption + "\n";
    out += "{\\footnotesize\n" + render_proof_bussproofs(it.proof) + "}\n\\bigskip\n";
  }
  out += "\\end{document}\n";
  return out;
}

}  // namespace displace

#endif  // DISPLACE_RENDER_HPP

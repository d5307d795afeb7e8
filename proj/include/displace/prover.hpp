// Backward cut-free proof search.

#ifndef DISPLACE_PROVER_HPP
#define DISPLACE_PROVER_HPP

#include <chrono>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "displace/config.hpp"
#include "displace/matcher.hpp"
#include "displace/proof.hpp"
#include "displace/rules.hpp"

namespace displace {

struct Inference {
  Rule rule;
  std::vector<Hypersequent> premises;
  RuleMeta meta;
};

namespace detail {

inline std::vector<Config> concat_fillers(std::vector<Config> a, const std::vector<Config>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Copies a configuration, turning the item at `rel` into a marker separator.
inline Config mark_item(const Config& c, const OccRef& rel) {
  Config out = c;
  Config& lvl = level_at(out, rel.path);
  lvl[static_cast<std::size_t>(rel.index)] = Item::separator(marker_label);
  return out;
}

class InferenceBuilder {
 public:
  InferenceBuilder(const Hypersequent& g, bool atomic_identity) : g_(g), atomic_identity_(atomic_identity) {}

  std::vector<Inference> run() {
    axioms();
    right_rule();
    for (const Occurrence& o : occurrences(g_.antecedent)) left_rules(o);
    return std::move(out_);
  }

 private:
  const Hypersequent& g_;
  bool atomic_identity_;
  std::vector<Inference> out_;

  void emit(Rule r, std::vector<Hypersequent> ps, RuleMeta m) { out_.push_back(Inference{r, std::move(ps), std::move(m)}); }

  static RuleMeta meta(const Type& principal, SpanRef site = {}, SpanRef focus = {}, std::string ex = {}) {
    RuleMeta m;
    m.principal = principal;
    m.k = principal->k();
    m.site = std::move(site);
    m.focus = std::move(focus);
    m.extraction = std::move(ex);
    return m;
  }

  void axioms() {
    const Type& A = g_.succedent;
    const Config& ant = g_.antecedent;
    if (ant.size() == 1 && is_vector_of(ant[0], A) && (!atomic_identity_ || A->op() == Connective::atom))
      emit(Rule::id, {}, meta(A));
    if (A->op() == Connective::unit_i && ant.empty()) emit(Rule::unit_i_r, {}, meta(A));
    if (A->op() == Connective::unit_j && ant.size() == 1 && ant[0].is_separator()) emit(Rule::unit_j_r, {}, meta(A));
  }

  void right_rule() {
    const Type& P = g_.succedent;
    const Config& ant = g_.antecedent;
    switch (P->op()) {
      case Connective::under: {
        Config c = vector_of(P->left());
        c.insert(c.end(), ant.begin(), ant.end());
        emit(Rule::under_r, {{std::move(c), P->right()}}, meta(P));
        break;
      }
      case Connective::over: {
        Config c = ant;
        c.push_back(vector_item(P->right()));
        emit(Rule::over_r, {{std::move(c), P->left()}}, meta(P));
        break;
      }
      case Connective::infix: {
        emit(Rule::infix_r, {{wrap_at(vector_of(P->left()), P->k(), ant), P->right()}}, meta(P));
        break;
      }
      case Connective::extract: {
        auto loc = nth_separator(ant, P->k());
        if (!loc) break;
        SpanRef at = loc->span();
        emit(Rule::extract_r, {{replace(ant, at, vector_of(P->right())), P->left()}}, meta(P, at));
        break;
      }
      case Connective::product: {
        const int sa = P->left()->sort(), sb = P->right()->sort();
        for (std::size_t i = 0; i <= ant.size(); ++i) {
          Config l(ant.begin(), ant.begin() + static_cast<std::ptrdiff_t>(i));
          Config r(ant.begin() + static_cast<std::ptrdiff_t>(i), ant.end());
          if (sort_of(l) != sa || sort_of(r) != sb) continue;
          emit(Rule::product_r, {{std::move(l), P->left()}, {std::move(r), P->right()}},
               meta(P, {}, SpanRef{{}, 0, static_cast<int>(i)}));
        }
        break;
      }
      case Connective::disc_product: {
        const int sa = P->left()->sort(), sb = P->right()->sort();
        for (const SpanRef& s : enumerate_spans(ant)) {
          Config inner = slice(ant, s);
          if (sort_of(inner) != sb) continue;
          Config outer = replace(ant, s, Config{Item::separator(marker_label)});
          if (sort_of(outer) != sa || separator_index(outer, marker_label) != P->k()) continue;
          emit(Rule::disc_product_r,
               {{clear_label(std::move(outer), marker_label), P->left()}, {std::move(inner), P->right()}},
               meta(P, {}, s));
        }
        break;
      }
      default: break;
    }
  }

  void left_rules(const Occurrence& o) {
    const Type& P = o.type;
    const Config& ant = g_.antecedent;
    const Config& lvl = level_at(ant, o.at.path);
    const int j = o.at.index;
    const SpanRef here = o.at.span();
    switch (P->op()) {
      case Connective::under: {
        const Type &A = P->left(), &C = P->right();
        for (int s = j; s >= 0; --s) {
          Config span(lvl.begin() + s, lvl.begin() + j);
          for (Extraction& ex : extract(span, A->sort())) {
            Item citem = Item::occurrence(C, concat_fillers(ex.thetas, o.fillers));
            SpanRef focus{o.at.path, s, j + 1};
            emit(Rule::under_l,
                 {{std::move(ex.gamma), A}, {replace(ant, focus, Config{std::move(citem)}), g_.succedent}},
                 meta(P, SpanRef{o.at.path, s, s + 1}, focus, fillers_text(ex.thetas)));
          }
        }
        break;
      }
      case Connective::over: {
        const Type &C = P->left(), &B = P->right();
        const int n = static_cast<int>(lvl.size());
        for (int e = j + 1; e <= n; ++e) {
          Config span(lvl.begin() + j + 1, lvl.begin() + e);
          for (Extraction& ex : extract(span, B->sort())) {
            Item citem = Item::occurrence(C, concat_fillers(o.fillers, ex.thetas));
            SpanRef focus{o.at.path, j, e};
            emit(Rule::over_l,
                 {{std::move(ex.gamma), B}, {replace(ant, focus, Config{std::move(citem)}), g_.succedent}},
                 meta(P, SpanRef{o.at.path, j, j + 1}, focus, fillers_text(ex.thetas)));
          }
        }
        break;
      }
      case Connective::extract: {
        const Type &C = P->left(), &B = P->right();
        const auto k = static_cast<std::size_t>(P->k());
        for (Extraction& ex : extract(o.fillers[k - 1], B->sort())) {
          std::vector<Config> fs(o.fillers.begin(), o.fillers.begin() + static_cast<std::ptrdiff_t>(k - 1));
          fs.insert(fs.end(), ex.thetas.begin(), ex.thetas.end());
          fs.insert(fs.end(), o.fillers.begin() + static_cast<std::ptrdiff_t>(k), o.fillers.end());
          emit(Rule::extract_l,
               {{std::move(ex.gamma), B},
                {replace(ant, here, Config{Item::occurrence(C, std::move(fs))}), g_.succedent}},
               meta(P, here, here, fillers_text(ex.thetas)));
        }
        break;
      }
      case Connective::infix: infix_left(o); break;
      case Connective::product: {
        const Type &A = P->left(), &B = P->right();
        const auto sa = static_cast<std::ptrdiff_t>(A->sort());
        Config pair{Item::occurrence(A, std::vector<Config>(o.fillers.begin(), o.fillers.begin() + sa)),
                    Item::occurrence(B, std::vector<Config>(o.fillers.begin() + sa, o.fillers.end()))};
        emit(Rule::product_l, {{replace(ant, here, pair), g_.succedent}},
             meta(P, SpanRef{o.at.path, j, j + 2}, here));
        break;
      }
      case Connective::disc_product: {
        const Type &A = P->left(), &B = P->right();
        const auto k = static_cast<std::ptrdiff_t>(P->k());
        const auto sb = static_cast<std::ptrdiff_t>(B->sort());
        const auto& f = o.fillers;
        std::vector<Config> fs(f.begin(), f.begin() + (k - 1));
        fs.push_back(Config{Item::occurrence(B, std::vector<Config>(f.begin() + (k - 1), f.begin() + (k - 1 + sb)))});
        fs.insert(fs.end(), f.begin() + (k - 1 + sb), f.end());
        emit(Rule::disc_product_l,
             {{replace(ant, here, Config{Item::occurrence(A, std::move(fs))}), g_.succedent}}, meta(P, here, here));
        break;
      }
      case Connective::unit_i:
        emit(Rule::unit_i_l, {{replace(ant, here, Config{}), g_.succedent}}, meta(P, SpanRef{o.at.path, j, j}, here));
        break;
      case Connective::unit_j: {
        const Config& phi = o.fillers[0];
        emit(Rule::unit_j_l, {{replace(ant, here, phi), g_.succedent}},
             meta(P, SpanRef{o.at.path, j, j + static_cast<int>(phi.size())}, here));
        break;
      }
      default: break;
    }
  }

  // The span wrapped around the occurrence may sit at the occurrence's own
  // level or at any enclosing level.
  void infix_left(const Occurrence& o) {
    const Type& P = o.type;
    const Type &A = P->left(), &C = P->right();
    const int k = P->k();
    const Config& ant = g_.antecedent;
    const Path& full = o.at.path;
    for (std::size_t depth = full.size() + 1; depth-- > 0;) {
      Path prefix(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(depth));
      const int idx = depth == full.size() ? o.at.index : full[depth].first;
      const Config& lvl = level_at(ant, prefix);
      const int n = static_cast<int>(lvl.size());
      for (int s = 0; s <= idx; ++s) {
        for (int e = idx + 1; e <= n; ++e) {
          Config span(lvl.begin() + s, lvl.begin() + e);
          Path rel_path(full.begin() + static_cast<std::ptrdiff_t>(depth), full.end());
          OccRef rel{rel_path, o.at.index};
          if (rel_path.empty()) rel.index -= s;
          else rel.path[0].first -= s;
          Config marked = mark_item(span, rel);
          for (Extraction& ex : extract(marked, A->sort() - 1, marker_label)) {
            if (separator_index(ex.gamma, marker_label) != k) continue;
            const auto kk = static_cast<std::ptrdiff_t>(k);
            std::vector<Config> fs(ex.thetas.begin(), ex.thetas.begin() + (kk - 1));
            fs.insert(fs.end(), o.fillers.begin(), o.fillers.end());
            fs.insert(fs.end(), ex.thetas.begin() + (kk - 1), ex.thetas.end());
            SpanRef focus{prefix, s, e};
            emit(Rule::infix_l,
                 {{clear_label(std::move(ex.gamma), marker_label), A},
                  {replace(ant, focus, Config{Item::occurrence(C, std::move(fs))}), g_.succedent}},
                 meta(P, SpanRef{prefix, s, s + 1}, focus, fillers_text(ex.thetas)));
          }
        }
      }
    }
  }
};

}  // namespace detail

// Every backward rule instance whose conclusion is g, in a fixed order:
// axioms, the right rule of the succedent, then left rules per antecedent
// occurrence in pre-order.
inline std::vector<Inference> applicable_inferences(const Hypersequent& g, bool atomic_identity = false) {
  return detail::InferenceBuilder(g, atomic_identity).run();
}

struct SearchLimits {
  std::size_t max_proofs = 100000;  // per goal and per subgoal
  double time_budget_seconds = 60.0;
  bool atomic_identity = false;  // restrict id to atomic types
};

struct SearchResult {
  std::vector<ProofPtr> proofs;
  bool truncated = false;
};

class Prover {
 public:
  explicit Prover(SearchLimits limits = {}) : limits_(limits) {}

  SearchResult prove_all(const Hypersequent& g) {
    start_ = std::chrono::steady_clock::now();
    truncated_ = timed_out_ = false;
    SearchResult r;
    r.proofs = solve(g);
    r.truncated = truncated_;
    return r;
  }

  // Provability only; never truncated by proof counts.
  bool provable(const Hypersequent& g) {
    std::string key = sequent_key(g);
    if (auto it = decided_.find(key); it != decided_.end()) return it->second;
    bool ok = false;
    for (const Inference& inf : applicable_inferences(g, limits_.atomic_identity)) {
      ok = true;
      for (const Hypersequent& p : inf.premises)
        if (!provable(p)) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    decided_.emplace(std::move(key), ok);
    return ok;
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  SearchLimits limits_;
  std::unordered_map<std::string, std::vector<ProofPtr>> memo_;
  std::unordered_map<std::string, bool> decided_;
  std::chrono::steady_clock::time_point start_;
  bool truncated_ = false;
  std::size_t ticks_ = 0;

  bool timed_out_ = false;

  bool out_of_time() {
    if (timed_out_) return true;
    if ((++ticks_ & 0xff) != 0) return false;
    std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
    if (spent.count() > limits_.time_budget_seconds) timed_out_ = truncated_ = true;
    return timed_out_;
  }

  static bool advance(std::vector<std::size_t>& pick, const std::vector<const std::vector<ProofPtr>*>& subs) {
    for (std::size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < subs[i]->size()) return true;
      pick[i] = 0;
    }
    return false;
  }

  const std::vector<ProofPtr>& solve(const Hypersequent& g) {
    std::string key = sequent_key(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<ProofPtr> found;
    for (const Inference& inf : applicable_inferences(g, limits_.atomic_identity)) {
      if (out_of_time()) break;
      std::vector<const std::vector<ProofPtr>*> subs;
      bool dead = false;
      for (const Hypersequent& p : inf.premises) {
        const auto& ps = solve(p);
        if (ps.empty()) {
          dead = true;
          break;
        }
        subs.push_back(&ps);
      }
      if (dead) continue;
      // Cartesian product of premise proofs.
      std::vector<std::size_t> pick(subs.size(), 0);
      while (true) {
        if (found.size() >= limits_.max_proofs) {
          truncated_ = true;
          break;
        }
        std::vector<ProofPtr> prem;
        prem.reserve(subs.size());
        for (std::size_t i = 0; i < subs.size(); ++i) prem.push_back((*subs[i])[pick[i]]);
        found.push_back(make_proof(g, inf.rule, inf.meta, std::move(prem)));
        if (!advance(pick, subs)) break;
      }
    }
    return memo_.emplace(std::move(key), std::move(found)).first->second;
  }
};

inline SearchResult prove_all(const Hypersequent& g, SearchLimits limits = {}) { return Prover(limits).prove_all(g); }

}  // namespace displace

#endif  // DISPLACE_PROVER_HPP

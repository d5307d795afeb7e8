// Shared helpers for the test binaries.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "displace/config.hpp"
#include "displace/type.hpp"

namespace testsupport {

using namespace displace;

inline Type T(const std::string& s) { return parse_type(s); }
inline Config C(const std::string& s) { return parse_config(s); }
inline Hypersequent H(const std::string& s) { return parse_sequent(s); }

// Random well-sorted type over the given atoms, built bottom-up and filtered
// by validation.
class TypeGen {
 public:
  explicit TypeGen(unsigned seed, std::vector<std::string> atoms = {"N", "S", "CN"})
      : rng_(seed), atoms_(std::move(atoms)) {}

  Type gen(int depth) {
    for (;;) {
      Type t = raw(depth);
      if (!validate_type(t)) return t;
    }
  }

  Type gen_sort(int depth, int sort) {
    for (;;) {
      Type t = gen(depth);
      if (t->sort() == sort) return t;
    }
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> atoms_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Type raw(int depth) {
    if (depth <= 0 || pick(3) == 0) {
      int r = pick(static_cast<int>(atoms_.size()) + 2);
      if (r == static_cast<int>(atoms_.size())) return unit_i();
      if (r == static_cast<int>(atoms_.size()) + 1) return unit_j();
      return atom(atoms_[static_cast<std::size_t>(r)]);
    }
    Type a = raw(depth - 1), b = raw(depth - 1);
    int k = 1 + pick(2);
    switch (pick(6)) {
      case 0: return under(a, b);
      case 1: return over(a, b);
      case 2: return product(a, b);
      case 3: return infix(k, a, b);
      case 4: return extract(k, a, b);
      default: return disc_product(k, a, b);
    }
  }
};

// Random configuration with the requested number of top-level items.
inline Config random_config(TypeGen& g, int items, int depth) {
  Config c;
  for (int i = 0; i < items; ++i) {
    int r = std::uniform_int_distribution<int>(0, 3)(g.rng());
    if (r == 0) {
      c.push_back(Item::separator());
    } else if (r == 1 && depth > 0) {
      Type t = g.gen(2);
      while (t->sort() == 0) t = g.gen(2);
      std::vector<Config> fs;
      for (int f = 0; f < t->sort(); ++f)
        fs.push_back(random_config(g, std::uniform_int_distribution<int>(0, 2)(g.rng()), depth - 1));
      c.push_back(Item::hyper(t, std::move(fs)));
    } else {
      c.push_back(Item::leaf(g.gen_sort(2, 0)));
    }
  }
  return c;
}

}  // namespace testsupport

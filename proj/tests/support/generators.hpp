#pragma once

// Seeded random formulas and traces for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <mitl/formula.hpp>
#include <mitl/trace.hpp>

namespace testsupport {

struct GenOptions {
  int max_depth = 3;
  int num_atoms = 2;
  std::int64_t max_const = 4;
  // When set, only formulas the normalizer accepts: Not above atoms only,
  // Until untimed or [0,b], Eventually any window, Always untimed only.
  bool synthesis_fragment = false;
  bool allow_always = true;
  bool allow_until = true;
};

inline std::string nth_atom(int i) { return std::string(1, char('A' + i)); }

inline mitl::Interval random_window(std::mt19937& rng, std::int64_t max_const, bool lo_zero) {
  std::uniform_int_distribution<std::int64_t> d(0, max_const - 1);
  std::int64_t a = lo_zero ? 0 : d(rng);
  std::uniform_int_distribution<std::int64_t> d2(a + 1, max_const);
  return mitl::Interval(a, d2(rng));
}

inline mitl::FormulaPtr random_formula(std::mt19937& rng, const GenOptions& opt, int depth = 0) {
  using namespace mitl;
  std::uniform_int_distribution<int> leaf_pick(0, 9);
  auto leaf = [&]() -> FormulaPtr {
    int r = leaf_pick(rng);
    if (r == 0) return f_true();
    if (r == 1) return f_false();
    std::uniform_int_distribution<int> a(0, opt.num_atoms - 1);
    return f_atom(nth_atom(a(rng)));
  };
  if (depth >= opt.max_depth) return leaf();

  std::uniform_int_distribution<int> pick(0, 11);
  std::uniform_int_distribution<int> coin(0, 1);
  int r = pick(rng);
  switch (r) {
    case 0: case 1:  // leaf
      return leaf();
    case 2: case 3: {  // not
      if (opt.synthesis_fragment) {
        std::uniform_int_distribution<int> a(0, opt.num_atoms - 1);
        return f_not(f_atom(nth_atom(a(rng))));
      }
      return f_not(random_formula(rng, opt, depth + 1));
    }
    case 4: case 5:
      return f_and(random_formula(rng, opt, depth + 1), random_formula(rng, opt, depth + 1));
    case 6: case 7:
      return f_or(random_formula(rng, opt, depth + 1), random_formula(rng, opt, depth + 1));
    case 8: case 9: {  // until
      if (!opt.allow_until) return leaf();
      Interval ivl;  // untimed
      if (coin(rng)) ivl = random_window(rng, opt.max_const, /*lo_zero=*/opt.synthesis_fragment);
      return f_until(random_formula(rng, opt, depth + 1), random_formula(rng, opt, depth + 1), ivl);
    }
    case 10: {  // eventually
      Interval ivl;
      if (coin(rng)) ivl = random_window(rng, opt.max_const, /*lo_zero=*/false);
      return f_ev(random_formula(rng, opt, depth + 1), ivl);
    }
    default: {  // always
      if (!opt.allow_always) return leaf();
      Interval ivl;
      if (!opt.synthesis_fragment && coin(rng)) ivl = random_window(rng, opt.max_const, false);
      return f_alw(random_formula(rng, opt, depth + 1), ivl);
    }
  }
}

inline bool contains_untimed_always(const mitl::FormulaPtr& f) {
  if (f->op == mitl::Op::Always && f->ivl.is_full()) return true;
  if (f->lhs && contains_untimed_always(f->lhs)) return true;
  if (f->rhs && contains_untimed_always(f->rhs)) return true;
  return false;
}

inline mitl::TimedTrace random_trace(std::mt19937& rng, int num_atoms, int max_cells,
                                     mitl::Rational delta = mitl::Rational(1, 2)) {
  mitl::TimedTrace tr;
  tr.delta = delta;
  std::uniform_int_distribution<int> len(1, max_cells);
  std::bernoulli_distribution on(0.4);
  int n = len(rng);
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> cell;
    for (int a = 0; a < num_atoms; ++a)
      if (on(rng)) cell.push_back(nth_atom(a));
    tr.samples.push_back(std::move(cell));
  }
  return tr;
}

}  // namespace testsupport

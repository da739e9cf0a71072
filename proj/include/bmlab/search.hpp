#pragma once

#include <functional>
#include <vector>

#include "bmlab/geom.hpp"

namespace bmlab {

// Deterministic derivative-free pattern search over translations. Starts from
// every seed, probes the 4 axis and 4 diagonal directions, halves the step on
// failure, stops below min_step. All arithmetic exact; reported value is a
// certified upper bound on the true minimum (it is an evaluated point).
struct PatternSearchResult {
  Vec2 arg;
  Rat value;
  Rat final_step;
  long evals = 0;
};

PatternSearchResult pattern_search_2d(const std::function<Rat(const Vec2&)>& objective,
                                      const std::vector<Vec2>& seeds,
                                      const Rat& init_step, const Rat& min_step);

// Same idea in n dims (used for the 3-parameter homothety search).
struct PatternSearchNdResult {
  std::vector<Rat> arg;
  Rat value;
  Rat final_step;
  long evals = 0;
};

PatternSearchNdResult pattern_search_nd(
    const std::function<Rat(const std::vector<Rat>&)>& objective,
    const std::vector<std::vector<Rat>>& seeds, const Rat& init_step,
    const Rat& min_step, const std::vector<Rat>& dim_scale);

}  // namespace bmlab

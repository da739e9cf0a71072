#include "bmlab/search.hpp"

#include <algorithm>

namespace bmlab {

PatternSearchResult pattern_search_2d(const std::function<Rat(const Vec2&)>& objective,
                                      const std::vector<Vec2>& seeds,
                                      const Rat& init_step, const Rat& min_step) {
  PatternSearchResult best;
  bool have_best = false;
  const std::vector<Vec2> dirs = {{rat(1), rat(0)},  {rat(-1), rat(0)},
                                  {rat(0), rat(1)},  {rat(0), rat(-1)},
                                  {rat(1), rat(1)},  {rat(1), rat(-1)},
                                  {rat(-1), rat(1)}, {rat(-1), rat(-1)}};
  long evals = 0;
  for (const Vec2& seed : seeds) {
    Vec2 cur = seed;
    Rat cur_val = objective(cur);
    ++evals;
    Rat step = init_step;
    while (step >= min_step) {
      bool improved = false;
      for (const Vec2& d : dirs) {
        Vec2 cand = cur + d * step;
        Rat v = objective(cand);
        ++evals;
        if (v < cur_val) {
          cur = cand;
          cur_val = v;
          improved = true;
          break;
        }
      }
      if (!improved) step /= 2;
    }
    if (!have_best || cur_val < best.value ||
        (cur_val == best.value && lex_less(cur, best.arg))) {
      best.arg = cur;
      best.value = cur_val;
      best.final_step = step;
      have_best = true;
    }
  }
  best.evals = evals;
  return best;
}

PatternSearchNdResult pattern_search_nd(
    const std::function<Rat(const std::vector<Rat>&)>& objective,
    const std::vector<std::vector<Rat>>& seeds, const Rat& init_step,
    const Rat& min_step, const std::vector<Rat>& dim_scale) {
  PatternSearchNdResult best;
  bool have_best = false;
  long evals = 0;
  for (const auto& seed : seeds) {
    std::vector<Rat> cur = seed;
    Rat cur_val = objective(cur);
    ++evals;
    Rat step = init_step;
    while (step >= min_step) {
      bool improved = false;
      for (size_t d = 0; d < cur.size() && !improved; ++d) {
        for (int s : {+1, -1}) {
          std::vector<Rat> cand = cur;
          cand[d] += Rat(s) * step * dim_scale[d];
          Rat v = objective(cand);
          ++evals;
          if (v < cur_val) {
            cur = std::move(cand);
            cur_val = v;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step /= 2;
    }
    if (!have_best || cur_val < best.value) {
      best.arg = cur;
      best.value = cur_val;
      best.final_step = step;
      have_best = true;
    }
  }
  best.evals = evals;
  return best;
}

}  // namespace bmlab

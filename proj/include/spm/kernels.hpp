#pragma once

// Enumeration kernels shared by ideals and submodules. Each kernel that has
// an inner loop worth spreading over threads takes an Exec policy; the
// Serial path is the reference the Parallel path is tested against.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "spm/elem_set.hpp"
#include "spm/errors.hpp"
#include "spm/exec.hpp"

namespace spm::kernels {

/// A + B for subgroups A, B of a finite abelian group with operation `add`.
/// Walks B and adds one coset of A per new representative, so the cost is
/// O(|A + B| + |B|).
template <class AddFn>
ElemSet subgroup_sum(const ElemSet& a, const ElemSet& b, AddFn&& add) {
  ElemSet out = a;
  const auto a_elems = a.to_vector();
  b.for_each([&](std::uint32_t y) {
    if (out.contains(y)) return;
    for (auto x : a_elems) out.insert(add(x, y));
  });
  return out;
}

/// Smallest element of each coset of `sub`, ascending. Since the elements
/// of a coset are visited in ascending order, the first unmarked element
/// is always the coset minimum.
template <class AddFn>
std::vector<std::uint32_t> coset_representatives(std::size_t universe,
                                                 const ElemSet& sub,
                                                 AddFn&& add) {
  std::vector<std::uint32_t> reps;
  ElemSet seen(universe);
  const auto sub_elems = sub.to_vector();
  for (std::uint32_t x = 0; x < universe; ++x) {
    if (seen.contains(x)) continue;
    reps.push_back(x);
    for (auto s : sub_elems) seen.insert(add(x, s));
  }
  return reps;
}

inline void sort_canonical(std::vector<ElemSet>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](const ElemSet& a, const ElemSet& b) { return canonical_less(a, b); });
}

/// All subgroups generated by sums of the given (closed) cyclic subgroups,
/// including the zero subgroup {zero}. Breadth-first over joins; every
/// frontier's joins are independent and computed as one parallel batch,
/// then merged in frontier order so the result does not depend on thread
/// count. Result is canonically sorted.
template <class AddFn>
std::vector<ElemSet> join_closure(std::size_t universe, std::uint32_t zero,
                                  const std::vector<ElemSet>& cyclics,
                                  AddFn&& add, std::size_t max_count,
                                  Exec exec, const char* budget_name) {
  ElemSet bottom(universe);
  bottom.insert(zero);
  std::vector<ElemSet> all{bottom};
  std::unordered_set<ElemSet, ElemSetHash> seen{bottom};
  std::vector<ElemSet> frontier{bottom};

  while (!frontier.empty()) {
    const std::size_t jobs = frontier.size() * cyclics.size();
    std::vector<ElemSet> joined(jobs);
    std::vector<char> valid(jobs, 0);
    const auto job = [&](std::size_t j) {
      const auto& s = frontier[j / cyclics.size()];
      const auto& c = cyclics[j % cyclics.size()];
      if (c.subset_of(s)) return;
      joined[j] = subgroup_sum(s, c, add);
      valid[j] = 1;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t j = 0; j < static_cast<std::int64_t>(jobs); ++j)
        job(static_cast<std::size_t>(j));
    } else {
      for (std::size_t j = 0; j < jobs; ++j) job(j);
    }

    std::vector<ElemSet> next;
    for (std::size_t j = 0; j < jobs; ++j) {
      if (!valid[j]) continue;
      if (seen.insert(joined[j]).second) {
        if (seen.size() > max_count)
          throw BudgetExceeded(budget_name, max_count, seen.size());
        all.push_back(joined[j]);
        next.push_back(std::move(joined[j]));
      }
    }
    frontier = std::move(next);
  }
  sort_canonical(all);
  return all;
}

}  // namespace spm::kernels

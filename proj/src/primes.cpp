#include "spm/primes.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "spm/errors.hpp"
#include "spm/kernels.hpp"

namespace spm {

namespace {

void require_proper(const Submodule& n) {
  if (!n.is_proper())
    throw PreconditionError(
        "prime submodules are proper by definition (N = M rejected)");
}

/// Coset representatives of M/N other than the one of N itself.
std::vector<ElemId> outside_reps(const Submodule& n) {
  auto reps = coset_representatives(n);
  reps.erase(reps.begin());  // 0 represents N
  return reps;
}

/// I_x^N y inside N, testing the generators of I_x^N.
bool annihilates_mod(const Ideal& ix, const Submodule& n, ElemId y) {
  const auto& m = n.module();
  return std::all_of(ix.generators().begin(), ix.generators().end(),
                     [&](Elem r) { return n.contains(m.smul(r, y)); });
}

}  // namespace

ScalarVerdict is_prime(const Submodule& n) {
  require_proper(n);
  const auto& m = n.module();
  const auto reps = outside_reps(n);
  const auto col = colon(n);
  for (Elem r = 0; r < m.ring().order(); ++r) {
    if (col.contains(r)) continue;
    for (auto x : reps)
      if (n.contains(m.smul(r, x))) return {false, ScalarWitness{r, x}};
  }
  return {};
}

ScalarVerdict is_semiprime(const Submodule& n) {
  require_proper(n);
  const auto& m = n.module();
  const auto& ring = m.ring();
  const auto reps = outside_reps(n);
  for (Elem r = 0; r < ring.order(); ++r) {
    const Elem r2 = ring.mul(r, r);
    for (auto x : reps)
      if (n.contains(m.smul(r2, x)) && !n.contains(m.smul(r, x)))
        return {false, ScalarWitness{r, x}};
  }
  return {};
}

PairVerdict is_strongly_prime(const Submodule& p, Exec exec) {
  require_proper(p);
  const auto reps = outside_reps(p);
  const std::size_t count = reps.size();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  // first violating y (as an index into reps) for a given x index
  const auto first_y = [&](std::size_t i) -> std::size_t {
    const auto ix = colon_cyclic(p, reps[i]);
    for (std::size_t j = 0; j < count; ++j)
      if (annihilates_mod(ix, p, reps[j])) return j;
    return none;
  };

  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto j = first_y(i); j != none)
        return {false, PairWitness{reps[i], reps[j]}};
    return {};
  }

  // The smallest violating x wins; workers skip x beyond the best so far.
  std::atomic<std::size_t> best{none};
  std::vector<std::size_t> y_of(count, none);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t si = 0; si < static_cast<std::int64_t>(count); ++si) {
    const auto i = static_cast<std::size_t>(si);
    if (i > best.load(std::memory_order_relaxed)) continue;
    const auto j = first_y(i);
    if (j == none) continue;
    y_of[i] = j;
    auto cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  }
  const auto i = best.load();
  if (i == none) return {};
  return {false, PairWitness{reps[i], reps[y_of[i]]}};
}

PointVerdict is_strongly_semiprime(const Submodule& c, Exec exec) {
  require_proper(c);
  const auto reps = outside_reps(c);
  const std::size_t count = reps.size();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  const auto violates = [&](std::size_t i) {
    return annihilates_mod(colon_cyclic(c, reps[i]), c, reps[i]);
  };

  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i)
      if (violates(i)) return {false, reps[i]};
    return {};
  }
  std::atomic<std::size_t> best{none};
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t si = 0; si < static_cast<std::int64_t>(count); ++si) {
    const auto i = static_cast<std::size_t>(si);
    if (i > best.load(std::memory_order_relaxed)) continue;
    if (!violates(i)) continue;
    auto cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  }
  const auto i = best.load();
  if (i == none) return {};
  return {false, reps[i]};
}

std::optional<std::size_t> SSpecPoset::index_of(const Submodule& s) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == s) return i;
  return std::nullopt;
}

SSpecPoset s_spec(const std::vector<Submodule>& lattice, Exec exec) {
  SSpecPoset out;
  if (lattice.empty()) return out;
  out.module = lattice.front().module_ptr();
  std::vector<char> keep(lattice.size(), 0);
  const auto test = [&](std::size_t i) {
    keep[i] = lattice[i].is_proper() &&
              is_strongly_prime(lattice[i], Exec::Serial).holds;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(lattice.size()); ++i)
      test(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < lattice.size(); ++i) test(i);
  }
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (keep[i]) out.nodes.push_back(lattice[i]);
  for (std::size_t i = 0; i < out.nodes.size(); ++i)
    for (std::size_t j = 0; j < out.nodes.size(); ++j)
      if (i != j && out.nodes[i].size() < out.nodes[j].size() &&
          out.nodes[i].is_subset_of(out.nodes[j]))
        out.edges.emplace_back(i, j);
  return out;
}

SSpecPoset s_spec(const ModulePtr& m, const Budget& budget, Exec exec) {
  auto spec = s_spec(enumerate_submodules(m, budget, exec), exec);
  spec.module = m;
  return spec;
}

Submodule s_rad(const Submodule& n, const SSpecPoset& spec) {
  std::optional<ElemSet> meet;
  for (const auto& p : spec.nodes) {
    if (!n.is_subset_of(p)) continue;
    if (!meet) meet = p.elements();
    else *meet &= p.elements();
  }
  if (!meet) return whole_module(n.module_ptr());
  return submodule_from_elements(n.module_ptr(), *meet);
}

std::vector<Submodule> strongly_minimal_primes(const Submodule& n,
                                               const SSpecPoset& spec) {
  std::vector<const Submodule*> above;
  for (const auto& p : spec.nodes)
    if (n.is_subset_of(p)) above.push_back(&p);
  std::vector<Submodule> out;
  for (const auto* p : above) {
    const bool minimal = std::none_of(above.begin(), above.end(), [&](const Submodule* l) {
      return l->size() < p->size() && l->is_subset_of(*p);
    });
    if (minimal) out.push_back(*p);
  }
  return out;
}

HeightResult s_ht_prime(const Submodule& p, const SSpecPoset& spec) {
  const auto target = spec.index_of(p);
  if (!target) throw PreconditionError("s_ht_prime: submodule is not strongly prime");

  // Nodes sorted by size form a topological order of the containment DAG.
  const std::size_t n = spec.nodes.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.nodes[a].size() < spec.nodes[b].size();
  });
  std::vector<std::vector<std::size_t>> below(n);
  for (auto [i, j] : spec.edges) below[j].push_back(i);
  std::vector<std::size_t> len(n, 0);
  std::vector<std::size_t> prev(n, n);
  for (auto v : order)
    for (auto u : below[v])
      if (len[u] + 1 > len[v]) {
        len[v] = len[u] + 1;
        prev[v] = u;
      }

  HeightResult out;
  out.value = len[*target];
  for (std::size_t v = *target; v != n; v = prev[v])
    out.witness_chain.push_back(spec.nodes[v]);
  std::reverse(out.witness_chain.begin(), out.witness_chain.end());
  return out;
}

HeightResult s_ht(const Submodule& n, const SSpecPoset& spec) {
  HeightResult best;
  for (const auto& p : strongly_minimal_primes(n, spec)) {
    auto h = s_ht_prime(p, spec);
    if (!best.value || *h.value < *best.value) best = std::move(h);
  }
  return best;
}

}  // namespace spm

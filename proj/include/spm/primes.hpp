#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "spm/exec.hpp"
#include "spm/module.hpp"

namespace spm {

/// (r, x) with r x in N but x not in N and r not in (N : M) for primality;
/// r^2 x in N but r x not in N for semiprimality.
struct ScalarWitness {
  Elem r;
  ElemId x;
  friend bool operator==(const ScalarWitness&, const ScalarWitness&) = default;
};

/// (x, y) outside P with I_x^P y inside P.
struct PairWitness {
  ElemId x;
  ElemId y;
  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

template <class W>
struct Verdict {
  bool holds = true;
  std::optional<W> witness;
  explicit operator bool() const { return holds; }
};

using ScalarVerdict = Verdict<ScalarWitness>;
using PairVerdict = Verdict<PairWitness>;
using PointVerdict = Verdict<ElemId>;

// All four predicates reject N = M (and so the zero module) with
// PreconditionError. Loops run over coset representatives of M/N in
// ascending order and report the first violation, which is also the first
// violation over all of M.

ScalarVerdict is_prime(const Submodule& n);
ScalarVerdict is_semiprime(const Submodule& n);
PairVerdict is_strongly_prime(const Submodule& p, Exec exec = default_exec());
PointVerdict is_strongly_semiprime(const Submodule& c, Exec exec = default_exec());

/// Strongly prime submodules of a module with their strict containments.
struct SSpecPoset {
  ModulePtr module;
  std::vector<Submodule> nodes;
  /// (i, j) whenever nodes[i] is strictly contained in nodes[j].
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::optional<std::size_t> index_of(const Submodule& s) const;
};

SSpecPoset s_spec(const std::vector<Submodule>& lattice, Exec exec = default_exec());
SSpecPoset s_spec(const ModulePtr& m, const Budget& budget = {},
                  Exec exec = default_exec());

/// Intersection of the strongly prime submodules containing N, or M.
Submodule s_rad(const Submodule& n, const SSpecPoset& spec);
std::vector<Submodule> strongly_minimal_primes(const Submodule& n,
                                               const SSpecPoset& spec);

struct HeightResult {
  /// Empty when undefined (no strongly prime submodule above N).
  std::optional<std::size_t> value;
  std::vector<Submodule> witness_chain;
};

/// Longest chain P_0 < ... < P_n = P inside S-Spec.
HeightResult s_ht_prime(const Submodule& p, const SSpecPoset& spec);
/// Minimum of s_ht_prime over the strongly minimal primes of N.
HeightResult s_ht(const Submodule& n, const SSpecPoset& spec);

}  // namespace spm

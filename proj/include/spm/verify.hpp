#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spm/exec.hpp"
#include "spm/instance.hpp"
#include "spm/module.hpp"
#include "spm/primes.hpp"

namespace spm {

/// Outcome of checking one claim on one instance.
struct VerificationReport {
  std::string claim;
  std::string instance;
  /// "pass", "fail", or "skipped(<reason>)".
  std::string verdict;
  /// Counterexample payload on fail, null otherwise. Payloads embed the
  /// instance (ring and module descriptors) so they can be replayed alone.
  json witness;
  double millis = 0;

  bool passed() const { return verdict == "pass"; }
  bool failed() const { return verdict == "fail"; }
  bool skipped() const { return verdict.rfind("skipped", 0) == 0; }
};

json to_json(const VerificationReport& r);
json to_json(const std::vector<VerificationReport>& rs);

/// The predicates the verifiers call. Tests swap in faulty versions to
/// check that the harness notices.
struct PredicateSet {
  std::function<ScalarVerdict(const Submodule&)> prime;
  std::function<ScalarVerdict(const Submodule&)> semiprime;
  std::function<PairVerdict(const Submodule&)> strongly_prime;
  std::function<PointVerdict(const Submodule&)> strongly_semiprime;

  static PredicateSet standard();
};

struct CorpusConfig {
  /// Rings of larger order are left out.
  std::size_t max_ring_order = 36;
  /// Free modules up to this rank; rank 3 only while |R|^3 <= rank3_max_order.
  std::size_t max_rank = 3;
  std::size_t rank3_max_order = 4096;
  /// Add R/(a) and R^2/Rv for every nonzero proper cyclic relation module.
  bool include_quotients = true;
  Budget budget;
  std::uint64_t seed = 20060607;
  /// Random three-element generator lists per module for the GPIT check.
  std::size_t random_triples = 50;
};

struct CorpusRing {
  RingSpec spec;
  RingPtr ring;
};

struct CorpusModule {
  std::size_t ring_index;
  ModuleSpec spec;
};

struct Corpus {
  CorpusConfig config;
  std::vector<CorpusRing> rings;
  std::vector<CorpusModule> modules;

  /// Modules are materialized on demand to keep the corpus small in memory.
  ModulePtr build(std::size_t i) const;
  /// {"ring": ..., "module": ...} in the instance format.
  json instance_json(std::size_t i) const;
  std::string descriptor(std::size_t i) const;
};

Corpus build_corpus(const CorpusConfig& config = {});

/// Lattice, maximal submodules and S-Spec of one module, computed once and
/// shared by the per-module verifiers.
struct ModuleAnalysis {
  ModulePtr module;
  json instance;
  std::string descriptor;
  std::vector<Submodule> lattice;
  std::vector<Submodule> maximal;
  SSpecPoset spec;
};

ModuleAnalysis analyze_module(ModulePtr module, json instance,
                              std::string descriptor, const Budget& budget,
                              const PredicateSet& preds = PredicateSet::standard(),
                              Exec exec = default_exec());

// Claim ids used below:
//   prop-1.1.1  strongly prime implies prime
//   prop-1.1.2  maximal implies strongly prime
//   ex-1.2      p x p in R^2 is prime but neither strongly prime nor
//               strongly semiprime
//   prop-1.3    S-Spec of F^k is the set of maximal subspaces
//   thm-1.5     localization of S-Spec, both set equalities
//   cor-1.6     P -> U^{-1}P is an order isomorphism
//   thm-1.7     strongly semiprime C equals its strongly prime radical
//   thm-2.3     s-ht(N) <= number of generators, flat M
//   thm-2.3-lemma-colon-chain, thm-2.3-lemma-quotient-dim,
//   thm-2.3-lemma-localization
//   antichain, sspec-eq-max, sp-implies-ssp, prime-implies-semiprime,
//   srad-extensive, srad-idempotent, max-ring-shadow, loc-postconditions,
//   ring-axioms

std::vector<VerificationReport> verify_prop_1_1(const ModuleAnalysis& a,
                                                const PredicateSet& preds = PredicateSet::standard());
std::vector<VerificationReport> verify_prop_1_1(const Corpus& corpus,
                                                const PredicateSet& preds = PredicateSet::standard());

/// Throws PreconditionError when `prime` is not a prime ideal.
VerificationReport verify_example_1_2(const Ideal& prime,
                                      const PredicateSet& preds = PredicateSet::standard());

/// Field `field`, V = field^rank.
VerificationReport verify_prop_1_3(const RingSpec& field, std::size_t rank,
                                   const Budget& budget = {});

/// Returns the thm-1.5 and cor-1.6 reports.
std::vector<VerificationReport> verify_thm_1_5(const ModuleAnalysis& a,
                                               const MultSet& mult,
                                               const Budget& budget,
                                               const PredicateSet& preds = PredicateSet::standard());
std::vector<VerificationReport> verify_thm_1_5(const ModulePtr& m, const MultSet& mult,
                                               const Budget& budget = {});

/// The multiplicative sets exercised for a ring: {1}, the saturation of
/// every singleton, and R \ m for every maximal ideal m; deduplicated.
std::vector<MultSet> canonical_multsets(const RingPtr& ring);

/// `nonvacuous` receives the number of strongly semiprime C checked.
VerificationReport verify_thm_1_7(const ModuleAnalysis& a,
                                  const PredicateSet& preds = PredicateSet::standard(),
                                  std::size_t* nonvacuous = nullptr);
std::vector<VerificationReport> verify_thm_1_7(const Corpus& corpus,
                                               const PredicateSet& preds = PredicateSet::standard());

/// GPIT bound and proof lemmas for N = <gens>. Throws PreconditionError
/// when N = M.
std::vector<VerificationReport> verify_thm_2_3(const ModuleAnalysis& a,
                                               const std::vector<ElemId>& gens,
                                               const Budget& budget,
                                               const PredicateSet& preds = PredicateSet::standard());
/// GPIT over all generator lists of size <= 2 plus `random_triples`
/// random lists of size 3, and the proof lemmas once per module.
std::vector<VerificationReport> verify_thm_2_3_enumerated(
    const ModuleAnalysis& a, const CorpusConfig& config, std::uint64_t seed,
    const PredicateSet& preds = PredicateSet::standard());

/// antichain and sspec-eq-max.
std::vector<VerificationReport> verify_antichain(const ModuleAnalysis& a);

/// sp-implies-ssp, prime-implies-semiprime, srad-extensive,
/// srad-idempotent, max-ring-shadow. Observations that are reported but
/// not asserted are appended to `exploratory`.
std::vector<VerificationReport> verify_derived(const ModuleAnalysis& a,
                                               const PredicateSet& preds,
                                               std::vector<json>* exploratory = nullptr);

/// K against its definition, ring axioms of U^-1 R, the localization map is a
/// ring map with kernel K, and U becomes invertible.
VerificationReport verify_ring_localization(const MultSet& mult);
/// T against its definition, U acts bijectively on U^-1 M, and M -> U^-1 M is
/// additive and semilinear with kernel T.
VerificationReport verify_localization(const ModulePtr& m, const MultSet& mult);

struct RunConfig {
  CorpusConfig corpus;
  PredicateSet predicates = PredicateSet::standard();
  Exec exec = default_exec();
  /// Claim-id prefixes to run; empty means all.
  std::vector<std::string> claims;
};

struct RunBundle {
  std::vector<VerificationReport> reports;
  std::vector<json> exploratory;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;

  int exit_code() const { return failed == 0 ? 0 : 1; }
};

/// Sorts by (claim, instance) and recounts.
void finalize(RunBundle& bundle);

RunBundle run_all(const RunConfig& config);

}  // namespace spm

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spm/elem_set.hpp"
#include "spm/exec.hpp"
#include "spm/ring.hpp"

namespace spm {

/// Index of a module element, 0..order-1. Index 0 is always zero.
using ElemId = std::uint32_t;
using Vec = std::vector<Elem>;

class FinModule;
using ModulePtr = std::shared_ptr<const FinModule>;

/// A finite module presented as R^k / D, D generated by `relations`.
///
/// Vectors of R^k are numbered in mixed radix with the first coordinate
/// least significant. Each coset of D is represented by its smallest
/// vector under that numbering, and element ids follow the order of the
/// representatives, so id 0 is the zero coset.
class FinModule {
 public:
  static ModulePtr create(RingPtr ring, std::size_t rank,
                          std::vector<Vec> relations,
                          const Budget& budget = {});

  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<Vec>& relations() const { return relations_; }
  std::size_t order() const { return order_; }
  bool is_zero() const { return order_ == 1; }

  ElemId zero() const { return 0; }
  ElemId add(ElemId a, ElemId b) const {
    std::size_t idx = 0;
    const Elem* ca = &coords_[a * rank_];
    const Elem* cb = &coords_[b * rank_];
    for (std::size_t i = rank_; i-- > 0;)
      idx = idx * ring_->order() + ring_->add(ca[i], cb[i]);
    return rep_of_[idx];
  }
  ElemId smul(Elem r, ElemId x) const { return smul_[r * order_ + x]; }
  ElemId neg(ElemId x) const { return smul(ring_->neg(ring_->one()), x); }
  ElemId sub(ElemId a, ElemId b) const { return add(a, neg(b)); }

  /// Element id of the coset of an arbitrary length-k vector.
  ElemId reduce(std::span<const Elem> vec) const;
  /// Canonical representative vector.
  Vec vector_of(ElemId x) const {
    return Vec(coords_.begin() + x * rank_, coords_.begin() + (x + 1) * rank_);
  }
  /// Images of the standard basis vectors; they generate the module.
  const std::vector<ElemId>& basis() const { return basis_; }

  const std::string& label() const { return label_; }
  std::string element_name(ElemId x) const;

 private:
  FinModule() = default;

  RingPtr ring_;
  std::size_t rank_ = 0;
  std::vector<Vec> relations_;
  std::size_t order_ = 0;
  std::vector<Elem> coords_;
  std::vector<ElemId> rep_of_;
  std::vector<ElemId> smul_;
  std::vector<ElemId> basis_;
  std::string label_;
};

ModulePtr make_free(const RingPtr& ring, std::size_t rank,
                    const Budget& budget = {});

class Submodule {
 public:
  Submodule(ModulePtr module, std::vector<ElemId> generators, ElemSet elements)
      : module_(std::move(module)),
        generators_(std::move(generators)),
        elements_(std::move(elements)) {}

  const FinModule& module() const { return *module_; }
  const ModulePtr& module_ptr() const { return module_; }
  const std::vector<ElemId>& generators() const { return generators_; }
  const ElemSet& elements() const { return elements_; }
  std::vector<ElemId> element_list() const { return elements_.to_vector(); }
  bool contains(ElemId x) const { return elements_.contains(x); }
  std::size_t size() const { return elements_.count(); }
  bool is_proper() const { return size() < module_->order(); }
  bool is_subset_of(const Submodule& o) const {
    return elements_.subset_of(o.elements_);
  }

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.module_ == b.module_ && a.elements_ == b.elements_;
  }

 private:
  ModulePtr module_;
  std::vector<ElemId> generators_;
  ElemSet elements_;
};

/// R x as an element set.
ElemSet cyclic_elements(const FinModule& m, ElemId x);
Submodule submodule_generate(const ModulePtr& m, std::vector<ElemId> gens);
/// Throws InvalidInput when `elements` is not closed.
Submodule submodule_from_elements(const ModulePtr& m, const ElemSet& elements);
Submodule zero_submodule(const ModulePtr& m);
Submodule whole_module(const ModulePtr& m);
Submodule submodule_sum(const Submodule& a, const Submodule& b);
Submodule submodule_intersection(const Submodule& a, const Submodule& b);
/// Coset representatives of M/N, ascending.
std::vector<ElemId> coset_representatives(const Submodule& n);
/// Display form "<[1,0], [0,2]>" using the stored generators.
std::string describe(const Submodule& n);

struct Quotient {
  ModulePtr module;
  std::vector<ElemId> projection;
};
Quotient quotient(const Submodule& n);

/// (N : M) = {r | r M in N}, tested on the basis of M.
Ideal colon(const Submodule& n);
/// I_x^N = (N + R x : M).
Ideal colon_cyclic(const Submodule& n, ElemId x);

/// The full submodule lattice, canonically ordered (by size, then by
/// element list). Breadth-first over covers: S + R x covers S exactly when
/// m x lies in S for some maximal ideal m.
std::vector<Submodule> enumerate_submodules(const ModulePtr& m,
                                            const Budget& budget = {},
                                            Exec exec = default_exec());
/// S is maximal iff S + R x = M for every x outside S.
bool is_maximal_submodule(const Submodule& s);
std::vector<Submodule> maximal_submodules(const std::vector<Submodule>& lattice);
std::vector<Submodule> maximal_submodules(const ModulePtr& m,
                                          const Budget& budget = {});

/// U^{-1}M realized as M/T, T = {x | u x = 0 for some u in U}, over the
/// ring U^{-1}R = R/K of `ring`.
struct ModuleLocalization {
  RingLocalization ring;
  Submodule torsion;
  bool degenerate = false;
  /// Null when degenerate.
  ModulePtr module;
  std::vector<ElemId> projection;
};
ModuleLocalization localize_module(const ModulePtr& m, const MultSet& mult);
/// U^{-1}N.
Submodule image_submodule(const Submodule& n, const ModuleLocalization& loc);
/// {x in M | x/1 in Q}.
Submodule preimage_submodule(const Submodule& q, const ModuleLocalization& loc);

struct LocalFreeness {
  Ideal maximal;
  bool complement_closed = true;
  std::size_t residue_order = 0;
  std::size_t residue_dim = 0;
  std::size_t local_module_order = 0;
  std::size_t local_ring_order = 0;
  bool free = false;
};

struct FlatnessCertificate {
  bool flat = true;
  std::vector<LocalFreeness> locals;
};

/// Free at the localization at every maximal ideal.
FlatnessCertificate is_flat(const ModulePtr& m);
/// dim of M/mM over R/m for a local ring (minimal number of generators).
std::size_t min_generators_local(const ModulePtr& m);

}  // namespace spm

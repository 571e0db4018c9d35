#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spm/elem_set.hpp"

namespace spm {

/// Index of a ring element, 0..order-1.
using Elem = std::uint32_t;

/// A finite commutative ring with identity given by dense operation tables.
///
/// Instances built by the `make_*` factories satisfy every ring axiom.
/// `from_tables` accepts arbitrary tables so that `validate_ring` can be
/// exercised on faulty input; such rings are not safe to use as module hosts.
class FiniteRing {
 public:
  static FiniteRing from_tables(std::size_t order, std::vector<Elem> add,
                                std::vector<Elem> mul, Elem zero, Elem one,
                                std::string label,
                                std::vector<std::string> names = {});

  std::size_t order() const { return order_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_[a * order_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * order_ + b]; }
  /// Additive inverse; requires a valid additive group.
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  std::optional<Elem> inverse(Elem a) const;
  bool is_unit(Elem a) const { return inverse(a).has_value(); }

  const std::string& label() const { return label_; }
  /// Human alias of an element ("3", "(1,2)", "x+1").
  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }

  /// n when this ring is literally Z/n with canonical tables.
  std::optional<std::size_t> zmod_modulus() const { return zmod_; }

  const std::vector<Elem>& add_table() const { return add_; }
  const std::vector<Elem>& mul_table() const { return mul_; }

 private:
  FiniteRing() = default;

  std::size_t order_ = 0;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  Elem zero_ = 0;
  Elem one_ = 0;
  std::string label_;
  std::vector<std::string> names_;
  std::optional<std::size_t> zmod_;

};

using RingPtr = std::shared_ptr<const FiniteRing>;

RingPtr make_zmod(std::size_t n);
/// Componentwise product. Elements are indexed mixed-radix with the first
/// factor least significant.
RingPtr make_product(const std::vector<RingPtr>& factors);
/// Z/n[x]/(f) for monic f. `modulus` lists coefficients from x^0 up to the
/// leading 1. Residue c0 + c1 x + ... has index c0 + c1 n + c2 n^2 + ...
RingPtr make_poly_quotient(const RingPtr& base,
                           const std::vector<std::size_t>& modulus);

struct AxiomViolation {
  std::string axiom;
  std::vector<Elem> witness;
};

struct RingValidation {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every ring axiom by full enumeration. At most one witness is
/// reported per axiom.
RingValidation validate_ring(const FiniteRing& ring);

class Ideal {
 public:
  Ideal(RingPtr ring, ElemSet elements, std::vector<Elem> generators)
      : ring_(std::move(ring)),
        elements_(std::move(elements)),
        generators_(std::move(generators)) {}

  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const ElemSet& elements() const { return elements_; }
  std::vector<Elem> element_list() const { return elements_.to_vector(); }
  const std::vector<Elem>& generators() const { return generators_; }
  bool contains(Elem a) const { return elements_.contains(a); }
  std::size_t size() const { return elements_.count(); }
  bool is_proper() const { return size() < ring_->order(); }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.ring_ == b.ring_ && a.elements_ == b.elements_;
  }

 private:
  RingPtr ring_;
  ElemSet elements_;
  std::vector<Elem> generators_;
};

/// Smallest ideal containing `gens`.
Ideal ideal_generate(const RingPtr& ring, const std::vector<Elem>& gens);
/// The ideal with the given element set; generators are chosen greedily.
/// Throws InvalidInput when `elements` is not an ideal.
Ideal ideal_from_elements(const RingPtr& ring, const ElemSet& elements);
/// Every ideal of the ring, canonically ordered (by size, then elements).
std::vector<Ideal> enumerate_ideals(const RingPtr& ring);
std::vector<Ideal> maximal_ideals(const RingPtr& ring);
/// a*b in I implies a in I or b in I, and I proper.
bool is_prime_ideal(const Ideal& ideal);

/// A multiplicatively closed subset containing 1.
class MultSet {
 public:
  const FiniteRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const ElemSet& elements() const { return elements_; }
  std::vector<Elem> element_list() const { return elements_.to_vector(); }
  bool contains(Elem a) const { return elements_.contains(a); }
  bool contains_zero() const { return contains(ring_->zero()); }

  friend bool operator==(const MultSet& a, const MultSet& b) {
    return a.ring_ == b.ring_ && a.elements_ == b.elements_;
  }

 private:
  MultSet(RingPtr ring, ElemSet elements)
      : ring_(std::move(ring)), elements_(std::move(elements)) {}
  RingPtr ring_;
  ElemSet elements_;

  friend MultSet saturate(const RingPtr&, const std::vector<Elem>&);
};

/// Smallest multiplicatively closed set containing seed and 1.
MultSet saturate(const RingPtr& ring, const std::vector<Elem>& seed);
/// R \ p as a multiplicative set, or nullopt when that complement is not
/// closed under multiplication.
std::optional<MultSet> complement_multset(const Ideal& ideal);

struct RingMap {
  RingPtr source;
  RingPtr target;
  std::vector<Elem> image;

  Elem operator()(Elem a) const { return image[a]; }
};

/// Checks additivity, multiplicativity and preservation of 0 and 1.
bool is_ring_homomorphism(const RingMap& map);

/// U^{-1}R realized as R/K with K = {r | u r = 0 for some u in U}.
struct RingLocalization {
  Ideal kernel;
  /// True when 0 is in U; the localization is then the zero ring, which is
  /// not representable as a FiniteRing, and `map.target` is null.
  bool degenerate = false;
  RingMap map;
};

RingLocalization localize_ring(const MultSet& mult);

}  // namespace spm

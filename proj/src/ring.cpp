#include "spm/ring.hpp"

#include <algorithm>

#include "spm/errors.hpp"
#include "spm/kernels.hpp"

namespace spm {

namespace {

bool is_literal_zmod(std::size_t n, const std::vector<Elem>& add,
                     const std::vector<Elem>& mul, Elem zero, Elem one) {
  if (zero != 0 || one != (n > 1 ? 1u : 0u)) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (add[a * n + b] != (a + b) % n || mul[a * n + b] != (a * b) % n)
        return false;
  return true;
}

std::string poly_name(const std::vector<std::size_t>& coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const auto c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += "x";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

FiniteRing FiniteRing::from_tables(std::size_t order, std::vector<Elem> add,
                                   std::vector<Elem> mul, Elem zero, Elem one,
                                   std::string label,
                                   std::vector<std::string> names) {
  if (order == 0) throw InvalidInput("ring order must be positive");
  if (add.size() != order * order || mul.size() != order * order)
    throw InvalidInput("operation tables must have order^2 entries");
  if (zero >= order || one >= order)
    throw InvalidInput("zero/one index out of range");
  for (auto v : add)
    if (v >= order) throw InvalidInput("add table entry out of range");
  for (auto v : mul)
    if (v >= order) throw InvalidInput("mul table entry out of range");
  if (names.empty()) {
    for (std::size_t i = 0; i < order; ++i) names.push_back(std::to_string(i));
  } else if (names.size() != order) {
    throw InvalidInput("name table must have one entry per element");
  }

  FiniteRing r;
  r.order_ = order;
  if (is_literal_zmod(order, add, mul, zero, one)) r.zmod_ = order;
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.zero_ = zero;
  r.one_ = one;
  r.label_ = std::move(label);
  r.names_ = std::move(names);

  // Missing inverses (only possible for faulty tables) map to `order`.
  r.neg_.assign(order, static_cast<Elem>(order));
  for (Elem a = 0; a < order; ++a)
    for (Elem b = 0; b < order; ++b)
      if (r.add(a, b) == zero) {
        r.neg_[a] = b;
        break;
      }
  return r;
}

std::optional<Elem> FiniteRing::inverse(Elem a) const {
  for (Elem b = 0; b < order_; ++b)
    if (mul(a, b) == one_) return b;
  return std::nullopt;
}

RingPtr make_zmod(std::size_t n) {
  if (n < 2) throw InvalidInput("zmod: trivial or empty ring (n < 2)");
  std::vector<Elem> add(n * n), mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      add[a * n + b] = static_cast<Elem>((a + b) % n);
      mul[a * n + b] = static_cast<Elem>((a * b) % n);
    }
  return std::make_shared<const FiniteRing>(FiniteRing::from_tables(
      n, std::move(add), std::move(mul), 0, 1, "Z/" + std::to_string(n)));
}

RingPtr make_product(const std::vector<RingPtr>& factors) {
  if (factors.size() < 2)
    throw InvalidInput("product: at least two factors required");
  std::size_t order = 1;
  for (const auto& f : factors) {
    if (!f) throw InvalidInput("product: null factor");
    order *= f->order();
    if (order > 4096) throw InvalidInput("product: order exceeds 4096");
  }

  // Mixed radix, first factor least significant.
  const auto decode = [&](std::size_t idx) {
    std::vector<Elem> c(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      c[i] = static_cast<Elem>(idx % factors[i]->order());
      idx /= factors[i]->order();
    }
    return c;
  };
  const auto encode = [&](const std::vector<Elem>& c) {
    std::size_t idx = 0;
    for (std::size_t i = factors.size(); i-- > 0;)
      idx = idx * factors[i]->order() + c[i];
    return static_cast<Elem>(idx);
  };

  std::vector<std::vector<Elem>> coords(order);
  std::vector<std::string> names(order);
  for (std::size_t a = 0; a < order; ++a) {
    coords[a] = decode(a);
    std::string n = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) n += ",";
      n += factors[i]->name(coords[a][i]);
    }
    names[a] = n + ")";
  }

  std::vector<Elem> add(order * order), mul(order * order);
  std::vector<Elem> tmp(factors.size());
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < factors.size(); ++i)
        tmp[i] = factors[i]->add(coords[a][i], coords[b][i]);
      add[a * order + b] = encode(tmp);
      for (std::size_t i = 0; i < factors.size(); ++i)
        tmp[i] = factors[i]->mul(coords[a][i], coords[b][i]);
      mul[a * order + b] = encode(tmp);
    }

  std::vector<Elem> zero(factors.size()), one(factors.size());
  std::string label;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    zero[i] = factors[i]->zero();
    one[i] = factors[i]->one();
    if (i) label += " x ";
    const bool wrap = factors[i]->label().find(' ') != std::string::npos;
    label += wrap ? "(" + factors[i]->label() + ")" : factors[i]->label();
  }
  return std::make_shared<const FiniteRing>(
      FiniteRing::from_tables(order, std::move(add), std::move(mul),
                              encode(zero), encode(one), std::move(label),
                              std::move(names)));
}

RingPtr make_poly_quotient(const RingPtr& base,
                           const std::vector<std::size_t>& modulus) {
  if (!base || !base->zmod_modulus())
    throw InvalidInput("polyquo: base ring must be Z/n");
  const std::size_t n = *base->zmod_modulus();
  if (modulus.size() < 2)
    throw InvalidInput("polyquo: modulus must have degree >= 1");
  for (auto c : modulus)
    if (c >= n) throw InvalidInput("polyquo: coefficient out of range");
  if (modulus.back() != 1)
    throw InvalidInput("polyquo: modulus must be monic");
  const std::size_t d = modulus.size() - 1;
  std::size_t order = 1;
  for (std::size_t i = 0; i < d; ++i) {
    order *= n;
    if (order > 4096) throw InvalidInput("polyquo: order exceeds 4096");
  }

  const auto decode = [&](std::size_t idx) {
    std::vector<std::size_t> c(d);
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = idx % n;
      idx /= n;
    }
    return c;
  };
  const auto encode = [&](const std::vector<std::size_t>& c) {
    std::size_t idx = 0;
    for (std::size_t i = d; i-- > 0;) idx = idx * n + c[i];
    return static_cast<Elem>(idx);
  };

  std::vector<std::vector<std::size_t>> coeffs(order);
  std::vector<std::string> names(order);
  for (std::size_t a = 0; a < order; ++a) {
    coeffs[a] = decode(a);
    names[a] = poly_name(coeffs[a]);
  }

  std::vector<Elem> add(order * order), mul(order * order);
  std::vector<std::size_t> sum(d), prod(2 * d - 1);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      for (std::size_t i = 0; i < d; ++i)
        sum[i] = (coeffs[a][i] + coeffs[b][i]) % n;
      add[a * order + b] = encode(sum);

      std::fill(prod.begin(), prod.end(), 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          prod[i + j] = (prod[i + j] + coeffs[a][i] * coeffs[b][j]) % n;
      // x^d = -(m_0 + ... + m_{d-1} x^{d-1})
      for (std::size_t k = prod.size(); k-- > d;) {
        const std::size_t lead = prod[k];
        if (lead == 0) continue;
        prod[k] = 0;
        for (std::size_t i = 0; i < d; ++i)
          prod[k - d + i] = (prod[k - d + i] + (n - modulus[i]) * lead) % n;
      }
      mul[a * order + b] =
          encode(std::vector<std::size_t>(prod.begin(), prod.begin() + d));
    }

  std::string label = base->label() + "[x]/(" + poly_name(modulus) + ")";
  std::vector<std::size_t> one_c(d, 0);
  one_c[0] = 1 % n;
  return std::make_shared<const FiniteRing>(
      FiniteRing::from_tables(order, std::move(add), std::move(mul), 0,
                              encode(one_c), std::move(label),
                              std::move(names)));
}

RingValidation validate_ring(const FiniteRing& r) {
  RingValidation report;
  const auto n = static_cast<Elem>(r.order());
  const auto fail = [&](const char* axiom, std::vector<Elem> w) {
    report.violations.push_back({axiom, std::move(w)});
  };

  if (r.zero() == r.one()) fail("zero != one", {r.zero()});

  // Each loop stops at its first witness.
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (r.add(a, b) != r.add(b, a)) return fail("add commutative", {a, b});
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
            return fail("add associative", {a, b, c});
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      if (r.add(a, r.zero()) != a) return fail("additive identity", {a});
  }();
  [&] {
    for (Elem a = 0; a < n; ++a) {
      bool has = false;
      for (Elem b = 0; b < n && !has; ++b) has = r.add(a, b) == r.zero();
      if (!has) return fail("additive inverse", {a});
    }
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (r.mul(a, b) != r.mul(b, a)) return fail("mul commutative", {a, b});
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
            return fail("mul associative", {a, b, c});
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      if (r.mul(a, r.one()) != a) return fail("multiplicative identity", {a});
  }();
  [&] {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
            return fail("distributive", {a, b, c});
  }();
  return report;
}

namespace {

ElemSet principal_ideal(const FiniteRing& r, Elem g) {
  ElemSet s(r.order());
  for (Elem a = 0; a < r.order(); ++a) s.insert(r.mul(a, g));
  return s;
}

std::vector<Elem> greedy_generators(const RingPtr& ring, const ElemSet& elems) {
  const auto& r = *ring;
  ElemSet closure(r.order());
  closure.insert(r.zero());
  std::vector<Elem> gens;
  elems.for_each([&](std::uint32_t g) {
    if (closure.contains(g)) return;
    gens.push_back(g);
    closure = kernels::subgroup_sum(
        closure, principal_ideal(r, g),
        [&](std::uint32_t a, std::uint32_t b) { return r.add(a, b); });
  });
  return gens;
}

}  // namespace

Ideal ideal_generate(const RingPtr& ring, const std::vector<Elem>& gens) {
  const auto& r = *ring;
  ElemSet s(r.order());
  s.insert(r.zero());
  const auto add = [&](std::uint32_t a, std::uint32_t b) { return r.add(a, b); };
  for (auto g : gens) {
    if (g >= r.order()) throw InvalidInput("ideal generator out of range");
    if (!s.contains(g)) s = kernels::subgroup_sum(s, principal_ideal(r, g), add);
  }
  return Ideal(ring, std::move(s), gens);
}

Ideal ideal_from_elements(const RingPtr& ring, const ElemSet& elements) {
  auto gens = greedy_generators(ring, elements);
  auto ideal = ideal_generate(ring, gens);
  if (!(ideal.elements() == elements))
    throw InvalidInput("element set is not an ideal");
  return ideal;
}

std::vector<Ideal> enumerate_ideals(const RingPtr& ring) {
  const auto& r = *ring;
  std::vector<ElemSet> principals;
  std::unordered_set<ElemSet, ElemSetHash> seen;
  for (Elem g = 0; g < r.order(); ++g) {
    auto p = principal_ideal(r, g);
    if (seen.insert(p).second) principals.push_back(std::move(p));
  }
  auto sets = kernels::join_closure(
      r.order(), r.zero(), principals,
      [&](std::uint32_t a, std::uint32_t b) { return r.add(a, b); },
      std::size_t{1} << 20, Exec::Serial, "ideals");
  std::vector<Ideal> out;
  out.reserve(sets.size());
  for (auto& s : sets) {
    auto gens = greedy_generators(ring, s);
    out.emplace_back(ring, std::move(s), std::move(gens));
  }
  return out;
}

std::vector<Ideal> maximal_ideals(const RingPtr& ring) {
  const auto all = enumerate_ideals(ring);
  std::vector<Ideal> out;
  for (const auto& i : all) {
    if (!i.is_proper()) continue;
    const bool dominated = std::any_of(all.begin(), all.end(), [&](const Ideal& j) {
      return j.is_proper() && j.size() > i.size() &&
             i.elements().subset_of(j.elements());
    });
    if (!dominated) out.push_back(i);
  }
  return out;
}

bool is_prime_ideal(const Ideal& ideal) {
  const auto& r = ideal.ring();
  if (!ideal.is_proper()) return false;
  for (Elem a = 0; a < r.order(); ++a) {
    if (ideal.contains(a)) continue;
    for (Elem b = 0; b < r.order(); ++b)
      if (!ideal.contains(b) && ideal.contains(r.mul(a, b))) return false;
  }
  return true;
}

MultSet saturate(const RingPtr& ring, const std::vector<Elem>& seed) {
  const auto& r = *ring;
  ElemSet s(r.order());
  std::vector<Elem> work{r.one()};
  s.insert(r.one());
  for (auto g : seed) {
    if (g >= r.order()) throw InvalidInput("multiplicative seed out of range");
    if (s.insert(g)) work.push_back(g);
  }
  // Closing under products with already-present elements reaches every
  // finite product of seeds.
  while (!work.empty()) {
    const Elem a = work.back();
    work.pop_back();
    for (auto b : s.to_vector()) {
      const Elem p = r.mul(a, b);
      if (s.insert(p)) work.push_back(p);
    }
  }
  return MultSet(ring, std::move(s));
}

std::optional<MultSet> complement_multset(const Ideal& ideal) {
  const auto& r = ideal.ring();
  std::vector<Elem> rest;
  for (Elem a = 0; a < r.order(); ++a)
    if (!ideal.contains(a)) rest.push_back(a);
  if (rest.empty()) return std::nullopt;
  auto sat = saturate(ideal.ring_ptr(), rest);
  if (sat.elements().count() != rest.size()) return std::nullopt;
  return sat;
}

bool is_ring_homomorphism(const RingMap& map) {
  const auto& s = *map.source;
  const auto& t = *map.target;
  if (map.image.size() != s.order()) return false;
  if (map(s.zero()) != t.zero() || map(s.one()) != t.one()) return false;
  for (Elem a = 0; a < s.order(); ++a)
    for (Elem b = 0; b < s.order(); ++b) {
      if (map(s.add(a, b)) != t.add(map(a), map(b))) return false;
      if (map(s.mul(a, b)) != t.mul(map(a), map(b))) return false;
    }
  return true;
}

RingLocalization localize_ring(const MultSet& mult) {
  const auto& ring = mult.ring_ptr();
  const auto& r = *ring;
  const auto units = mult.element_list();

  ElemSet k(r.order());
  for (Elem a = 0; a < r.order(); ++a)
    for (auto u : units)
      if (r.mul(u, a) == r.zero()) {
        k.insert(a);
        break;
      }
  Ideal kernel = ideal_from_elements(ring, k);

  if (mult.contains_zero()) {
    return {std::move(kernel), true,
            RingMap{ring, nullptr, std::vector<Elem>(r.order(), 0)}};
  }

  const auto add = [&](std::uint32_t a, std::uint32_t b) { return r.add(a, b); };
  const auto reps = kernels::coset_representatives(r.order(), k, add);
  std::vector<Elem> image(r.order());
  {
    const auto kelems = k.to_vector();
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (auto x : kelems) image[add(reps[i], x)] = static_cast<Elem>(i);
  }

  const std::size_t m = reps.size();
  std::vector<Elem> qadd(m * m), qmul(m * m);
  std::vector<std::string> names(m);
  for (std::size_t i = 0; i < m; ++i) {
    names[i] = "[" + r.name(reps[i]) + "]";
    for (std::size_t j = 0; j < m; ++j) {
      qadd[i * m + j] = image[r.add(reps[i], reps[j])];
      qmul[i * m + j] = image[r.mul(reps[i], reps[j])];
    }
  }
  std::string label = r.label() + "[U^-1]";
  if (m == r.order()) names = r.names();
  auto target = std::make_shared<const FiniteRing>(FiniteRing::from_tables(
      m, std::move(qadd), std::move(qmul), image[r.zero()], image[r.one()],
      std::move(label), std::move(names)));

  RingMap map{ring, target, std::move(image)};
  for (auto u : units)
    if (!target->is_unit(map(u)))
      throw std::logic_error("localize_ring: image of a denominator is not a unit");
  return {std::move(kernel), false, std::move(map)};
}

}  // namespace spm

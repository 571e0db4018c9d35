#include "oracle.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace oracle {

namespace {

void require_proper(const FinModule& m, const ElemSet& n) {
  if (n.count() == m.order()) throw std::invalid_argument("oracle: submodule is not proper");
}

bool in_colon(const FinModule& m, const ElemSet& s, Elem r) {
  for (ElemId y = 0; y < m.order(); ++y)
    if (!s.contains(m.smul(r, y))) return false;
  return true;
}

bool kills_into(const FinModule& m, const ElemSet& scalars, ElemId y, const ElemSet& target) {
  bool ok = true;
  scalars.for_each([&](std::uint32_t a) { ok = ok && target.contains(m.smul(a, y)); });
  return ok;
}

/// colon() memoized on the exact set; the definition is still evaluated for
/// every x, only repeated values of the same set are looked up.
class ColonCache {
 public:
  explicit ColonCache(const FinModule& m) : m_(m) {}
  const ElemSet& operator()(const ElemSet& s) {
    auto it = memo_.find(s);
    if (it == memo_.end()) it = memo_.emplace(s, colon(m_, s)).first;
    return it->second;
  }

 private:
  const FinModule& m_;
  std::unordered_map<ElemSet, ElemSet, spm::ElemSetHash> memo_;
};

/// Dense addition table of the most recently used module.
const std::vector<ElemId>& addition_table(const FinModule& m) {
  thread_local const FinModule* owner = nullptr;
  thread_local std::string owner_label;
  thread_local std::vector<ElemId> table;
  if (owner != &m || owner_label != m.label()) {
    const std::size_t n = m.order();
    table.assign(n * n, 0);
    for (ElemId a = 0; a < n; ++a)
      for (ElemId b = 0; b < n; ++b) table[a * n + b] = m.add(a, b);
    owner = &m;
    owner_label = m.label();
  }
  return table;
}

/// The translates b + N of a submodule N, each stored once.
struct Translates {
  std::vector<std::uint32_t> of;  // element -> index into sets
  std::vector<ElemSet> sets;

  Translates(const FinModule& m, const ElemSet& n) : of(m.order(), UINT32_MAX) {
    const auto& plus = addition_table(m);
    const auto listed = n.to_vector();
    for (ElemId b = 0; b < m.order(); ++b) {
      if (of[b] != UINT32_MAX) continue;
      ElemSet t(m.order());
      for (auto a : listed) {
        const ElemId e = plus[std::size_t{b} * m.order() + a];
        t.insert(e);
        of[e] = static_cast<std::uint32_t>(sets.size());
      }
      sets.push_back(std::move(t));
    }
  }
};

// N + R x as the union of the translates N + r x.
ElemSet sum_cyclic_translates(const FinModule& m, const ElemSet& n, const Translates& tr,
                              ElemId x) {
  ElemSet out = n;
  for (Elem r = 0; r < m.ring().order() && out.count() < m.order(); ++r) {
    const ElemId b = m.smul(r, x);
    if (!out.contains(b)) out |= tr.sets[tr.of[b]];
  }
  return out;
}

}  // namespace

ElemSet sum_cyclic(const FinModule& m, const ElemSet& n, ElemId x) {
  const auto& plus = addition_table(m);
  ElemSet out = n;
  for (Elem r = 0; r < m.ring().order(); ++r) {
    const ElemId b = m.smul(r, x);
    if (out.contains(b)) continue;
    const ElemId* row = &plus[std::size_t{b} * m.order()];
    n.for_each([&](std::uint32_t a) { out.insert(row[a]); });
  }
  return out;
}

ElemSet colon(const FinModule& m, const ElemSet& s) {
  ElemSet out(m.ring().order());
  for (Elem r = 0; r < m.ring().order(); ++r)
    if (in_colon(m, s, r)) out.insert(r);
  return out;
}

ElemSet span(const FinModule& m, const std::vector<ElemId>& gens) {
  ElemSet out(m.order());
  out.insert(m.zero());
  for (auto g : gens) out = sum_cyclic(m, out, g);
  return out;
}

spm::ScalarVerdict is_prime(const FinModule& m, const ElemSet& n) {
  require_proper(m, n);
  for (Elem r = 0; r < m.ring().order(); ++r) {
    std::optional<bool> r_in_colon;
    for (ElemId x = 0; x < m.order(); ++x) {
      if (!n.contains(m.smul(r, x)) || n.contains(x)) continue;
      if (!r_in_colon) r_in_colon = in_colon(m, n, r);
      if (!*r_in_colon) return {false, spm::ScalarWitness{r, x}};
    }
  }
  return {};
}

spm::ScalarVerdict is_semiprime(const FinModule& m, const ElemSet& n) {
  require_proper(m, n);
  const auto& ring = m.ring();
  for (Elem r = 0; r < ring.order(); ++r)
    for (ElemId x = 0; x < m.order(); ++x)
      if (n.contains(m.smul(ring.mul(r, r), x)) && !n.contains(m.smul(r, x)))
        return {false, spm::ScalarWitness{r, x}};
  return {};
}

spm::PairVerdict is_strongly_prime(const FinModule& m, const ElemSet& p) {
  require_proper(m, p);
  ColonCache colon_of(m);
  const Translates tr(m, p);
  // The y scan depends only on the colon ideal; ColonCache entries are stable.
  std::unordered_map<const ElemSet*, std::optional<ElemId>> first_y;
  for (ElemId x = 0; x < m.order(); ++x) {
    if (p.contains(x)) continue;
    const auto& ix = colon_of(sum_cyclic_translates(m, p, tr, x));
    auto it = first_y.find(&ix);
    if (it == first_y.end()) {
      std::optional<ElemId> hit;
      for (ElemId y = 0; y < m.order() && !hit; ++y)
        if (!p.contains(y) && kills_into(m, ix, y, p)) hit = y;
      it = first_y.emplace(&ix, hit).first;
    }
    if (it->second) return {false, spm::PairWitness{x, *it->second}};
  }
  return {};
}

spm::PointVerdict is_strongly_semiprime(const FinModule& m, const ElemSet& c) {
  require_proper(m, c);
  ColonCache colon_of(m);
  const Translates tr(m, c);
  for (ElemId x = 0; x < m.order(); ++x) {
    if (c.contains(x)) continue;
    if (kills_into(m, colon_of(sum_cyclic_translates(m, c, tr, x)), x, c)) return {false, x};
  }
  return {};
}

bool refutes_prime(const FinModule& m, const ElemSet& n, const spm::ScalarWitness& w) {
  return n.contains(m.smul(w.r, w.x)) && !n.contains(w.x) && !in_colon(m, n, w.r);
}

bool refutes_semiprime(const FinModule& m, const ElemSet& n, const spm::ScalarWitness& w) {
  return n.contains(m.smul(m.ring().mul(w.r, w.r), w.x)) && !n.contains(m.smul(w.r, w.x));
}

bool refutes_strongly_prime(const FinModule& m, const ElemSet& p, const spm::PairWitness& w) {
  return !p.contains(w.x) && !p.contains(w.y) &&
         kills_into(m, colon(m, sum_cyclic(m, p, w.x)), w.y, p);
}

bool refutes_strongly_semiprime(const FinModule& m, const ElemSet& c, ElemId x) {
  return !c.contains(x) && kills_into(m, colon(m, sum_cyclic(m, c, x)), x, c);
}

}  // namespace oracle

#include "spm/module.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "spm/errors.hpp"
#include "spm/kernels.hpp"

namespace spm {

namespace {

std::string vec_name(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

// Presentations derived from an existing module never exceed its ambient.
Budget unlimited() {
  return {std::size_t(-1), std::size_t(-1), std::size_t(-1)};
}

std::size_t int_log(std::size_t value, std::size_t base) {
  std::size_t e = 0, p = 1;
  while (p < value) {
    p *= base;
    ++e;
  }
  if (p != value) throw std::logic_error("order is not a power of the residue field order");
  return e;
}

}  // namespace

ModulePtr FinModule::create(RingPtr ring, std::size_t rank,
                            std::vector<Vec> relations, const Budget& budget) {
  if (!ring) throw InvalidInput("module: null ring");
  const std::size_t n = ring->order();
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].size() != rank)
      throw InvalidInput("module.relations[" + std::to_string(i) +
                         "]: vector length " +
                         std::to_string(relations[i].size()) + " != rank " +
                         std::to_string(rank));
    for (auto c : relations[i])
      if (c >= n)
        throw InvalidInput("module.relations[" + std::to_string(i) +
                           "]: element index " + std::to_string(c) +
                           " out of range");
  }
  std::size_t ambient = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    ambient *= n;
    if (ambient > budget.max_ambient)
      throw BudgetExceeded("max-ambient", budget.max_ambient, ambient);
  }

  const auto encode = [&](const Elem* c) {
    std::size_t idx = 0;
    for (std::size_t i = rank; i-- > 0;) idx = idx * n + c[i];
    return static_cast<std::uint32_t>(idx);
  };
  std::vector<Elem> amb(ambient * rank);
  for (std::size_t a = 0; a < ambient; ++a) {
    std::size_t idx = a;
    for (std::size_t i = 0; i < rank; ++i) {
      amb[a * rank + i] = static_cast<Elem>(idx % n);
      idx /= n;
    }
  }
  Vec tmp(rank);
  const auto amb_add = [&](std::uint32_t a, std::uint32_t b) {
    for (std::size_t i = 0; i < rank; ++i)
      tmp[i] = ring->add(amb[a * rank + i], amb[b * rank + i]);
    return encode(tmp.data());
  };

  ElemSet rel(ambient);
  rel.insert(0);
  for (const auto& v : relations) {
    ElemSet cyc(ambient);
    Vec rv(rank);
    for (Elem r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < rank; ++i) rv[i] = ring->mul(r, v[i]);
      cyc.insert(encode(rv.data()));
    }
    if (!cyc.subset_of(rel)) rel = kernels::subgroup_sum(rel, cyc, amb_add);
  }

  auto m = std::shared_ptr<FinModule>(new FinModule());
  m->ring_ = ring;
  m->rank_ = rank;
  m->relations_ = std::move(relations);
  constexpr ElemId unset = ~ElemId{0};
  m->rep_of_.assign(ambient, unset);
  const auto rel_elems = rel.to_vector();
  std::vector<std::uint32_t> reps;
  for (std::uint32_t a = 0; a < ambient; ++a) {
    if (m->rep_of_[a] != unset) continue;
    const auto id = static_cast<ElemId>(reps.size());
    reps.push_back(a);
    for (auto d : rel_elems) m->rep_of_[amb_add(a, d)] = id;
  }
  m->order_ = reps.size();
  m->coords_.resize(m->order_ * rank);
  for (std::size_t x = 0; x < m->order_; ++x)
    for (std::size_t i = 0; i < rank; ++i)
      m->coords_[x * rank + i] = amb[reps[x] * rank + i];

  m->smul_.resize(n * m->order_);
  for (Elem r = 0; r < n; ++r)
    for (std::size_t x = 0; x < m->order_; ++x) {
      for (std::size_t i = 0; i < rank; ++i)
        tmp[i] = ring->mul(r, m->coords_[x * rank + i]);
      m->smul_[r * m->order_ + x] = m->rep_of_[encode(tmp.data())];
    }

  for (std::size_t i = 0; i < rank; ++i) {
    Vec e(rank, ring->zero());
    e[i] = ring->one();
    m->basis_.push_back(m->rep_of_[encode(e.data())]);
  }

  if (rank == 0) {
    m->label_ = "0";
  } else {
    m->label_ = rank == 1 ? ring->label()
                          : "(" + ring->label() + ")^" + std::to_string(rank);
    if (!m->relations_.empty()) {
      std::string rels;
      for (const auto& v : m->relations_) {
        if (!rels.empty()) rels += ",";
        rels += vec_name(v);
      }
      m->label_ += " / <" + rels + ">";
    }
  }
  return m;
}

ElemId FinModule::reduce(std::span<const Elem> vec) const {
  if (vec.size() != rank_)
    throw InvalidInput("vector length " + std::to_string(vec.size()) +
                       " != rank " + std::to_string(rank_));
  std::size_t idx = 0;
  for (std::size_t i = rank_; i-- > 0;) {
    if (vec[i] >= ring_->order())
      throw InvalidInput("element index " + std::to_string(vec[i]) +
                         " out of range for " + ring_->label());
    idx = idx * ring_->order() + vec[i];
  }
  return rep_of_[idx];
}

std::string FinModule::element_name(ElemId x) const {
  return vec_name(vector_of(x));
}

ModulePtr make_free(const RingPtr& ring, std::size_t rank, const Budget& budget) {
  return FinModule::create(ring, rank, {}, budget);
}

ElemSet cyclic_elements(const FinModule& m, ElemId x) {
  ElemSet s(m.order());
  for (Elem r = 0; r < m.ring().order(); ++r) s.insert(m.smul(r, x));
  return s;
}

namespace {

auto adder(const FinModule& m) {
  return [&m](std::uint32_t a, std::uint32_t b) { return m.add(a, b); };
}

std::vector<ElemId> greedy_generators(const FinModule& m, const ElemSet& elems) {
  ElemSet closure(m.order());
  closure.insert(m.zero());
  std::vector<ElemId> gens;
  elems.for_each([&](std::uint32_t g) {
    if (closure.contains(g)) return;
    gens.push_back(g);
    closure = kernels::subgroup_sum(closure, cyclic_elements(m, g), adder(m));
  });
  return gens;
}

}  // namespace

Submodule submodule_generate(const ModulePtr& m, std::vector<ElemId> gens) {
  ElemSet s(m->order());
  s.insert(m->zero());
  for (auto g : gens) {
    if (g >= m->order()) throw InvalidInput("submodule generator out of range");
    if (!s.contains(g))
      s = kernels::subgroup_sum(s, cyclic_elements(*m, g), adder(*m));
  }
  return Submodule(m, std::move(gens), std::move(s));
}

Submodule submodule_from_elements(const ModulePtr& m, const ElemSet& elements) {
  auto s = submodule_generate(m, greedy_generators(*m, elements));
  if (!(s.elements() == elements))
    throw InvalidInput("element set is not a submodule");
  return s;
}

Submodule zero_submodule(const ModulePtr& m) { return submodule_generate(m, {}); }

Submodule whole_module(const ModulePtr& m) {
  return submodule_generate(m, m->basis());
}

Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Submodule(a.module_ptr(), std::move(gens),
                   kernels::subgroup_sum(a.elements(), b.elements(),
                                         adder(a.module())));
}

Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
  ElemSet e = a.elements();
  e &= b.elements();
  return Submodule(a.module_ptr(), greedy_generators(a.module(), e), std::move(e));
}

std::vector<ElemId> coset_representatives(const Submodule& n) {
  return kernels::coset_representatives(n.module().order(), n.elements(),
                                        adder(n.module()));
}

std::string describe(const Submodule& n) {
  if (n.generators().empty()) return "0";
  std::string s = "<";
  for (std::size_t i = 0; i < n.generators().size(); ++i) {
    if (i) s += ", ";
    s += n.module().element_name(n.generators()[i]);
  }
  return s + ">";
}

Quotient quotient(const Submodule& n) {
  const auto& m = n.module();
  auto rels = m.relations();
  for (auto g : n.generators()) rels.push_back(m.vector_of(g));
  Quotient q{FinModule::create(m.ring_ptr(), m.rank(), std::move(rels),
                               unlimited()),
             {}};
  q.projection.resize(m.order());
  for (ElemId x = 0; x < m.order(); ++x)
    q.projection[x] = q.module->reduce(m.vector_of(x));
  return q;
}

Ideal colon(const Submodule& n) {
  const auto& m = n.module();
  const auto& r = m.ring();
  ElemSet out(r.order());
  for (Elem a = 0; a < r.order(); ++a) {
    bool in = true;
    for (auto b : m.basis())
      if (!n.contains(m.smul(a, b))) {
        in = false;
        break;
      }
    if (in) out.insert(a);
  }
  return ideal_from_elements(m.ring_ptr(), out);
}

Ideal colon_cyclic(const Submodule& n, ElemId x) {
  const auto& m = n.module();
  if (n.contains(x)) return colon(n);
  auto gens = n.generators();
  gens.push_back(x);
  Submodule sum(n.module_ptr(), std::move(gens),
                kernels::subgroup_sum(n.elements(), cyclic_elements(m, x),
                                      adder(m)));
  return colon(sum);
}

std::vector<Submodule> enumerate_submodules(const ModulePtr& mp,
                                            const Budget& budget, Exec exec) {
  const auto& m = *mp;
  if (m.order() > budget.max_module_order)
    throw BudgetExceeded("max-module-order", budget.max_module_order, m.order());

  std::vector<std::vector<Elem>> max_gens;
  for (const auto& mi : maximal_ideals(m.ring_ptr())) max_gens.push_back(mi.generators());

  const auto covers_of = [&](const ElemSet& s) {
    std::vector<ElemSet> covers;
    ElemSet covered = s;
    for (ElemId x = 0; x < m.order(); ++x) {
      if (covered.contains(x)) continue;
      const bool simple_step = std::any_of(
          max_gens.begin(), max_gens.end(), [&](const std::vector<Elem>& gens) {
            return std::all_of(gens.begin(), gens.end(), [&](Elem g) {
              return s.contains(m.smul(g, x));
            });
          });
      if (!simple_step) continue;
      auto c = kernels::subgroup_sum(s, cyclic_elements(m, x), adder(m));
      c.for_each([&](std::uint32_t e) { covered.insert(e); });
      covers.push_back(std::move(c));
    }
    return covers;
  };

  ElemSet bottom(m.order());
  bottom.insert(m.zero());
  std::vector<ElemSet> all{bottom};
  std::unordered_set<ElemSet, ElemSetHash> seen{bottom};
  std::vector<ElemSet> frontier{bottom};
  while (!frontier.empty()) {
    std::vector<std::vector<ElemSet>> found(frontier.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(frontier.size()); ++i)
        found[i] = covers_of(frontier[i]);
    } else {
      for (std::size_t i = 0; i < frontier.size(); ++i)
        found[i] = covers_of(frontier[i]);
    }
    std::vector<ElemSet> next;
    for (auto& batch : found)
      for (auto& c : batch)
        if (seen.insert(c).second) {
          if (seen.size() > budget.max_submodules)
            throw BudgetExceeded("max-submodules", budget.max_submodules, seen.size());
          all.push_back(c);
          next.push_back(std::move(c));
        }
    frontier = std::move(next);
  }
  kernels::sort_canonical(all);

  std::vector<Submodule> out;
  out.reserve(all.size());
  for (auto& s : all) {
    auto gens = greedy_generators(m, s);
    out.emplace_back(mp, std::move(gens), std::move(s));
  }
  return out;
}

bool is_maximal_submodule(const Submodule& s) {
  if (!s.is_proper()) return false;
  const auto& m = s.module();
  for (auto x : coset_representatives(s)) {
    if (s.contains(x)) continue;
    auto sum = kernels::subgroup_sum(s.elements(), cyclic_elements(m, x), adder(m));
    if (sum.count() != m.order()) return false;
  }
  return true;
}

std::vector<Submodule> maximal_submodules(const std::vector<Submodule>& lattice) {
  std::vector<Submodule> out;
  for (const auto& s : lattice)
    if (is_maximal_submodule(s)) out.push_back(s);
  return out;
}

std::vector<Submodule> maximal_submodules(const ModulePtr& m, const Budget& budget) {
  return maximal_submodules(enumerate_submodules(m, budget));
}

ModuleLocalization localize_module(const ModulePtr& mp, const MultSet& mult) {
  const auto& m = *mp;
  if (mult.ring_ptr() != m.ring_ptr())
    throw InvalidInput("multiplicative set belongs to a different ring");
  auto rloc = localize_ring(mult);
  const auto units = mult.element_list();

  ElemSet t(m.order());
  for (ElemId x = 0; x < m.order(); ++x)
    for (auto u : units)
      if (m.smul(u, x) == m.zero()) {
        t.insert(x);
        break;
      }
  auto torsion = submodule_from_elements(mp, t);

  if (rloc.degenerate) {
    return {std::move(rloc), std::move(torsion), true, nullptr,
            std::vector<ElemId>(m.order(), 0)};
  }

  const auto& map = rloc.map;
  const auto image_vec = [&](ElemId x) {
    Vec v = m.vector_of(x);
    for (auto& c : v) c = map(c);
    return v;
  };
  std::vector<Vec> rels;
  for (const auto& v : m.relations()) {
    Vec w = v;
    for (auto& c : w) c = map(c);
    rels.push_back(std::move(w));
  }
  for (auto g : torsion.generators()) rels.push_back(image_vec(g));
  std::erase_if(rels, [](const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](ElemId c) { return c == 0; });
  });
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  auto local = FinModule::create(map.target, m.rank(), std::move(rels),
                                 unlimited());
  std::vector<ElemId> proj(m.order());
  for (ElemId x = 0; x < m.order(); ++x) proj[x] = local->reduce(image_vec(x));

  // Each denominator must act bijectively on U^{-1}M.
  for (auto u : units) {
    ElemSet img(local->order());
    for (ElemId y = 0; y < local->order(); ++y) img.insert(local->smul(map(u), y));
    if (img.count() != local->order())
      throw std::logic_error("localize_module: a denominator does not act bijectively");
  }
  return {std::move(rloc), std::move(torsion), false, std::move(local), std::move(proj)};
}

Submodule image_submodule(const Submodule& n, const ModuleLocalization& loc) {
  if (loc.degenerate) throw PreconditionError("degenerate localization");
  std::vector<ElemId> gens;
  for (auto g : n.generators()) gens.push_back(loc.projection[g]);
  return submodule_generate(loc.module, std::move(gens));
}

Submodule preimage_submodule(const Submodule& q, const ModuleLocalization& loc) {
  if (loc.degenerate) throw PreconditionError("degenerate localization");
  const auto& src = loc.torsion.module_ptr();
  ElemSet e(src->order());
  for (ElemId x = 0; x < src->order(); ++x)
    if (q.contains(loc.projection[x])) e.insert(x);
  return submodule_from_elements(src, e);
}

namespace {

/// Residue dimension of M over a local ring with maximal ideal `mi`.
std::pair<std::size_t, std::size_t> residue_dimension(const ModulePtr& mp,
                                                      const Ideal& mi) {
  const auto& m = *mp;
  std::vector<ElemId> gens;
  for (auto g : mi.generators())
    for (auto b : m.basis()) gens.push_back(m.smul(g, b));
  const auto mm = submodule_generate(mp, std::move(gens));
  const std::size_t residue = m.ring().order() / mi.size();
  return {residue, int_log(m.order() / mm.size(), residue)};
}

}  // namespace

FlatnessCertificate is_flat(const ModulePtr& mp) {
  FlatnessCertificate cert;
  for (const auto& mi : maximal_ideals(mp->ring_ptr())) {
    LocalFreeness local{mi};
    auto u = complement_multset(mi);
    if (!u) {
      local.complement_closed = false;
      cert.flat = false;
      cert.locals.push_back(std::move(local));
      continue;
    }
    const auto loc = localize_module(mp, *u);
    const auto& rm = loc.ring.map;
    std::vector<Elem> mgens;
    for (auto g : mi.generators()) mgens.push_back(rm(g));
    const auto local_max = ideal_generate(rm.target, mgens);
    const auto [residue, dim] = residue_dimension(loc.module, local_max);
    local.residue_order = residue;
    local.residue_dim = dim;
    local.local_module_order = loc.module->order();
    local.local_ring_order = rm.target->order();
    std::size_t free_order = 1;
    for (std::size_t i = 0; i < dim; ++i) free_order *= local.local_ring_order;
    local.free = free_order == local.local_module_order;
    cert.flat = cert.flat && local.free;
    cert.locals.push_back(std::move(local));
  }
  return cert;
}

std::size_t min_generators_local(const ModulePtr& mp) {
  const auto maxes = maximal_ideals(mp->ring_ptr());
  if (maxes.size() != 1)
    throw PreconditionError("min_generators_local: ring " + mp->ring().label() +
                            " is not local");
  return residue_dimension(mp, maxes.front()).second;
}

}  // namespace spm

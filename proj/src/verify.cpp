#include "spm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "spm/errors.hpp"
#include "spm/kernels.hpp"

namespace spm {

namespace {

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

VerificationReport report(std::string claim, std::string instance, bool ok,
                          json witness, const Stopwatch& sw) {
  return {std::move(claim), std::move(instance), ok ? "pass" : "fail",
          ok ? json() : std::move(witness), sw.millis()};
}

VerificationReport skipped(std::string claim, std::string instance,
                           const std::string& reason, const Stopwatch& sw,
                           json witness = json()) {
  return {std::move(claim), std::move(instance), "skipped(" + reason + ")",
          std::move(witness), sw.millis()};
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (auto c : v) a.push_back(c);
  return a;
}

json elem_json(const FinModule& m, ElemId x) { return vec_json(m.vector_of(x)); }

json sub_json(const Submodule& s) {
  json gens = json::array();
  for (auto g : s.generators()) gens.push_back(elem_json(s.module(), g));
  json j = json::object();
  j["generators"] = gens;
  j["order"] = s.size();
  return j;
}

json ideal_json(const Ideal& i) {
  json j = json::array();
  for (auto a : i.element_list()) j.push_back(a);
  return j;
}

std::string set_name(const FiniteRing& r, const ElemSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::uint32_t a) {
    if (!first) out += ",";
    first = false;
    out += r.name(a);
  });
  return out + "}";
}

/// Intersection of the strongly prime submodules above N, or all of M.
ElemSet meet_above(const ElemSet& n, const SSpecPoset& spec, std::size_t order) {
  std::optional<ElemSet> meet;
  for (const auto& p : spec.nodes) {
    if (!n.subset_of(p.elements())) continue;
    if (!meet) meet = p.elements();
    else *meet &= p.elements();
  }
  return meet ? *meet : ElemSet::full(order);
}

SSpecPoset spec_with(const std::vector<Submodule>& lattice, const PredicateSet& preds,
                     Exec exec) {
  if (preds.strongly_prime == nullptr) throw std::logic_error("empty predicate set");
  SSpecPoset out;
  if (lattice.empty()) return out;
  out.module = lattice.front().module_ptr();
  for (const auto& s : lattice)
    if (s.is_proper() && preds.strongly_prime(s).holds) out.nodes.push_back(s);
  for (std::size_t i = 0; i < out.nodes.size(); ++i)
    for (std::size_t j = 0; j < out.nodes.size(); ++j)
      if (i != j && out.nodes[i].size() < out.nodes[j].size() &&
          out.nodes[i].is_subset_of(out.nodes[j]))
        out.edges.emplace_back(i, j);
  (void)exec;
  return out;
}

bool disjoint(const Ideal& i, const MultSet& u) {
  bool hit = false;
  u.elements().for_each([&](std::uint32_t a) { hit = hit || i.contains(a); });
  return !hit;
}

}  // namespace

json to_json(const VerificationReport& r) {
  json j = json::object();
  j["claim"] = r.claim;
  j["instance"] = r.instance;
  j["verdict"] = r.verdict;
  j["witness"] = r.witness;
  j["millis"] = r.millis;
  return j;
}

json to_json(const std::vector<VerificationReport>& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

PredicateSet PredicateSet::standard() {
  return {
      [](const Submodule& n) { return is_prime(n); },
      [](const Submodule& n) { return is_semiprime(n); },
      [](const Submodule& n) { return is_strongly_prime(n, Exec::Serial); },
      [](const Submodule& n) { return is_strongly_semiprime(n, Exec::Serial); },
  };
}

ModulePtr Corpus::build(std::size_t i) const {
  const auto& e = modules.at(i);
  return build_module(rings.at(e.ring_index).ring, e.spec, config.budget);
}

json Corpus::instance_json(std::size_t i) const {
  const auto& e = modules.at(i);
  json j = json::object();
  j["ring"] = to_json(rings.at(e.ring_index).spec);
  j["module"] = to_json(e.spec);
  return j;
}

std::string Corpus::descriptor(std::size_t i) const { return "M=" + build(i)->label(); }

Corpus build_corpus(const CorpusConfig& config) {
  Corpus c;
  c.config = config;
  if (config.max_ring_order < 2) throw InvalidInput("corpus: max_ring_order must be >= 2");
  if (config.budget.max_module_order == 0 || config.budget.max_submodules == 0)
    throw InvalidInput("corpus: budgets must be positive");

  std::vector<RingSpec> specs;
  for (std::size_t n = 2; n <= 16; ++n) specs.push_back(RingSpec::zmod(n));
  for (std::size_t n : {25, 27, 32}) specs.push_back(RingSpec::zmod(n));
  for (std::size_t a = 2; a * a <= 36; ++a)
    for (std::size_t b = a; a * b <= 36; ++b)
      specs.push_back(RingSpec::product({RingSpec::zmod(a), RingSpec::zmod(b)}));
  specs.push_back(RingSpec::polyquo(2, {1, 1, 1}));     // F4
  specs.push_back(RingSpec::polyquo(2, {1, 1, 0, 1}));  // F8
  specs.push_back(RingSpec::polyquo(3, {1, 0, 1}));     // F9
  specs.push_back(RingSpec::polyquo(4, {1, 1, 1}));     // Galois ring GR(4,2)
  specs.push_back(RingSpec::polyquo(2, {0, 0, 1}));     // dual numbers over F2

  for (auto& s : specs) {
    auto ring = build_ring(s);
    if (ring->order() > config.max_ring_order) continue;
    if (!validate_ring(*ring).ok())
      throw std::logic_error("corpus ring fails validation: " + ring->label());
    c.rings.push_back({std::move(s), std::move(ring)});
  }

  for (std::size_t ri = 0; ri < c.rings.size(); ++ri) {
    const auto& ring = c.rings[ri].ring;
    const std::size_t q = ring->order();
    for (std::size_t k = 1; k <= std::min<std::size_t>(config.max_rank, 2); ++k)
      c.modules.push_back({ri, {k, {}}});
    if (config.max_rank >= 3 && q * q * q <= config.rank3_max_order)
      c.modules.push_back({ri, {3, {}}});
    if (!config.include_quotients) continue;

    for (std::size_t k = 1; k <= std::min<std::size_t>(config.max_rank, 2); ++k) {
      auto free = make_free(ring, k, config.budget);
      std::unordered_set<ElemSet, ElemSetHash> seen;
      for (ElemId v = 1; v < free->order(); ++v) {
        auto cyc = cyclic_elements(*free, v);
        if (cyc.count() == free->order()) continue;  // R/(unit) is zero
        if (!seen.insert(cyc).second) continue;
        c.modules.push_back({ri, {k, {free->vector_of(v)}}});
      }
    }
  }
  return c;
}

ModuleAnalysis analyze_module(ModulePtr module, json instance, std::string descriptor,
                              const Budget& budget, const PredicateSet& preds,
                              Exec exec) {
  ModuleAnalysis a;
  a.module = module;
  a.instance = std::move(instance);
  a.descriptor = std::move(descriptor);
  a.lattice = enumerate_submodules(module, budget, exec);
  a.maximal = maximal_submodules(a.lattice);
  a.spec = spec_with(a.lattice, preds, exec);
  a.spec.module = module;
  return a;
}

std::vector<VerificationReport> verify_prop_1_1(const ModuleAnalysis& a,
                                                const PredicateSet& preds) {
  std::vector<VerificationReport> out;
  {
    Stopwatch sw;
    json w;
    for (const auto& p : a.spec.nodes) {
      const auto v = preds.prime(p);
      if (!v.holds) {
        w = {{"instance", a.instance}, {"submodule", sub_json(p)}};
        if (v.witness)
          w["prime_witness"] = {{"r", v.witness->r},
                                {"x", elem_json(*a.module, v.witness->x)}};
        break;
      }
    }
    out.push_back(report("prop-1.1.1", a.descriptor, w.is_null(), w, sw));
  }
  {
    Stopwatch sw;
    json w;
    for (const auto& p : a.maximal) {
      const auto v = preds.strongly_prime(p);
      if (!v.holds) {
        w = {{"instance", a.instance}, {"submodule", sub_json(p)}};
        if (v.witness)
          w["strongly_prime_witness"] = {{"x", elem_json(*a.module, v.witness->x)},
                                         {"y", elem_json(*a.module, v.witness->y)}};
        break;
      }
    }
    if (a.maximal.empty())
      out.push_back(skipped("prop-1.1.2", a.descriptor, "vacuous", sw));
    else
      out.push_back(report("prop-1.1.2", a.descriptor, w.is_null(), w, sw));
  }
  return out;
}

std::vector<VerificationReport> verify_prop_1_1(const Corpus& corpus,
                                                const PredicateSet& preds) {
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < corpus.modules.size(); ++i) {
    Stopwatch sw;
    try {
      auto a = analyze_module(corpus.build(i), corpus.instance_json(i),
                              corpus.descriptor(i), corpus.config.budget, preds);
      for (auto& r : verify_prop_1_1(a, preds)) out.push_back(std::move(r));
    } catch (const BudgetExceeded& e) {
      out.push_back(skipped("prop-1.1", corpus.descriptor(i), std::string("budget: ") + e.budget(), sw));
    }
  }
  return out;
}

VerificationReport verify_example_1_2(const Ideal& prime, const PredicateSet& preds) {
  Stopwatch sw;
  const auto& ring = prime.ring_ptr();
  const auto& r = *ring;
  const std::string desc =
      "R=" + r.label() + "; p=" + set_name(r, prime.elements());

  // p must be a prime submodule of R viewed as a module over itself.
  const auto line = make_free(ring, 1);
  std::vector<ElemId> pg;
  for (auto g : prime.generators()) pg.push_back(line->reduce(Vec{g}));
  const auto p_sub = submodule_generate(line, pg);
  if (!p_sub.is_proper() || !preds.prime(p_sub).holds)
    throw PreconditionError("ex-1.2: " + set_name(r, prime.elements()) +
                            " is not a prime ideal of " + r.label());

  const auto plane = make_free(ring, 2);
  std::vector<ElemId> gens;
  for (auto g : prime.generators()) {
    gens.push_back(plane->reduce(Vec{g, r.zero()}));
    gens.push_back(plane->reduce(Vec{r.zero(), g}));
  }
  const auto n = submodule_generate(plane, gens);
  const auto e1 = plane->reduce(Vec{r.one(), r.zero()});

  json w = json::object();
  w["instance"] = {{"ring", r.label()}, {"module", plane->label()}};
  w["submodule"] = sub_json(n);
  bool ok = true;
  if (!preds.prime(n).holds) {
    ok = false;
    w["failed"] = "p x p is not prime";
  } else if (preds.strongly_prime(n).holds) {
    ok = false;
    w["failed"] = "p x p is strongly prime";
  } else if (preds.strongly_semiprime(n).holds) {
    ok = false;
    w["failed"] = "p x p is strongly semiprime";
  } else {
    // (1,0) outside N with I_(1,0) (1,0) inside N
    const auto ix = colon_cyclic(n, e1);
    bool inside = !n.contains(e1);
    for (auto a : ix.element_list()) inside = inside && n.contains(plane->smul(a, e1));
    if (!inside) {
      ok = false;
      w["failed"] = "(1,0) is not a witness";
    }
  }
  return report("ex-1.2", desc, ok, w, sw);
}

VerificationReport verify_prop_1_3(const RingSpec& field, std::size_t rank,
                                   const Budget& budget) {
  Stopwatch sw;
  const auto f = build_ring(field);
  const auto v = make_free(f, rank, budget);
  const std::string desc = "V=" + v->label();
  for (Elem a = 0; a < f->order(); ++a)
    if (a != f->zero() && !f->is_unit(a))
      throw PreconditionError("prop-1.3: " + f->label() + " is not a field");
  const auto lattice = enumerate_submodules(v, budget);
  const auto spec = s_spec(lattice);
  const auto maxes = maximal_submodules(lattice);
  json w;
  const auto in = [](const std::vector<Submodule>& xs, const Submodule& s) {
    return std::find(xs.begin(), xs.end(), s) != xs.end();
  };
  for (const auto& p : spec.nodes)
    if (!in(maxes, p)) {
      w = {{"strongly_prime_not_maximal", sub_json(p)}};
      break;
    }
  if (w.is_null())
    for (const auto& p : maxes)
      if (!in(spec.nodes, p)) {
        w = {{"maximal_not_strongly_prime", sub_json(p)}};
        break;
      }
  if (!w.is_null()) w["instance"] = {{"ring", to_json(field)}, {"module", {{"free", rank}}}};
  return report("prop-1.3", desc, w.is_null(), w, sw);
}

std::vector<MultSet> canonical_multsets(const RingPtr& ring) {
  std::vector<MultSet> out;
  const auto add = [&](MultSet u) {
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
  };
  add(saturate(ring, {}));
  for (Elem a = 0; a < ring->order(); ++a) add(saturate(ring, {a}));
  for (const auto& m : maximal_ideals(ring))
    if (auto u = complement_multset(m)) add(std::move(*u));
  return out;
}

std::vector<VerificationReport> verify_thm_1_5(const ModuleAnalysis& a,
                                               const MultSet& mult,
                                               const Budget& budget,
                                               const PredicateSet& preds) {
  Stopwatch sw;
  const auto& m = *a.module;
  const std::string desc =
      a.descriptor + "; U=" + set_name(m.ring(), mult.elements());
  const auto loc = localize_module(a.module, mult);
  if (loc.degenerate)
    return {skipped("thm-1.5", desc, "degenerate", sw),
            skipped("cor-1.6", desc, "degenerate", sw)};

  std::vector<Submodule> local_lattice;
  try {
    local_lattice = enumerate_submodules(loc.module, budget, Exec::Serial);
  } catch (const BudgetExceeded& e) {
    return {skipped("thm-1.5", desc, "budget: " + e.budget(), sw),
            skipped("cor-1.6", desc, "budget: " + e.budget(), sw)};
  }
  const auto local_spec = spec_with(local_lattice, preds, Exec::Serial);
  const std::size_t local_order = loc.module->order();

  std::unordered_set<ElemSet, ElemSetHash> lhs, rhs_proper, rhs_colon;
  for (const auto& q : local_spec.nodes) lhs.insert(q.elements());

  // Domain of the correspondence: strongly primes with (P:M) disjoint from U.
  std::vector<const Submodule*> domain;
  std::vector<Submodule> images;
  for (const auto& p : a.spec.nodes) {
    auto img = image_submodule(p, loc);
    if (img.size() < local_order) rhs_proper.insert(img.elements());
    if (disjoint(colon(p), mult)) {
      rhs_colon.insert(img.elements());
      domain.push_back(&p);
      images.push_back(std::move(img));
    }
  }

  const auto diff_json = [&](const std::unordered_set<ElemSet, ElemSetHash>& x,
                             const std::unordered_set<ElemSet, ElemSetHash>& y) {
    json d = json::array();
    for (const auto& s : x)
      if (!y.count(s)) d.push_back(sub_json(submodule_from_elements(loc.module, s)));
    return d;
  };

  json w;
  if (lhs != rhs_proper) {
    w = {{"failed", "S-Spec(U^-1 M) != {U^-1 P : U^-1 P != U^-1 M}"},
         {"only_left", diff_json(lhs, rhs_proper)},
         {"only_right", diff_json(rhs_proper, lhs)}};
  } else if (lhs != rhs_colon) {
    w = {{"failed", "S-Spec(U^-1 M) != {U^-1 P : (P:M) disjoint from U}"},
         {"only_left", diff_json(lhs, rhs_colon)},
         {"only_right", diff_json(rhs_colon, lhs)}};
  } else {
    for (const auto& q : local_spec.nodes) {
      const auto back = preimage_submodule(q, loc);
      if (!a.spec.index_of(back) || !(image_submodule(back, loc) == q)) {
        w = {{"failed", "preimage of a strongly prime is not a strongly prime with image Q"},
             {"local_submodule", sub_json(q)},
             {"preimage", sub_json(back)}};
        break;
      }
    }
  }
  if (!w.is_null()) w["instance"] = a.instance, w["multset"] = mult.element_list();
  std::vector<VerificationReport> out{report("thm-1.5", desc, w.is_null(), w, sw)};

  Stopwatch sw2;
  json w2;
  for (std::size_t i = 0; i < domain.size() && w2.is_null(); ++i)
    for (std::size_t j = 0; j < domain.size() && w2.is_null(); ++j) {
      if (i != j && images[i] == images[j])
        w2 = {{"failed", "not injective"}, {"p", sub_json(*domain[i])}, {"q", sub_json(*domain[j])}};
      else if (domain[i]->is_subset_of(*domain[j]) != images[i].is_subset_of(images[j]))
        w2 = {{"failed", "inclusion not preserved/reflected"},
              {"p", sub_json(*domain[i])},
              {"q", sub_json(*domain[j])}};
    }
  if (w2.is_null() && rhs_colon != lhs) w2 = {{"failed", "not surjective"}};
  if (!w2.is_null()) w2["instance"] = a.instance, w2["multset"] = mult.element_list();
  out.push_back(report("cor-1.6", desc, w2.is_null(), w2, sw2));
  return out;
}

std::vector<VerificationReport> verify_thm_1_5(const ModulePtr& m, const MultSet& mult,
                                               const Budget& budget) {
  const auto preds = PredicateSet::standard();
  auto a = analyze_module(m, json(), "M=" + m->label(), budget, preds);
  return verify_thm_1_5(a, mult, budget, preds);
}

VerificationReport verify_thm_1_7(const ModuleAnalysis& a, const PredicateSet& preds,
                                  std::size_t* nonvacuous) {
  Stopwatch sw;
  std::size_t count = 0;
  json w;
  for (const auto& c : a.lattice) {
    if (!c.is_proper() || !preds.strongly_semiprime(c).holds) continue;
    ++count;
    const auto rad = meet_above(c.elements(), a.spec, a.module->order());
    if (!(rad == c.elements())) {
      w = {{"instance", a.instance},
           {"submodule", sub_json(c)},
           {"s_rad_order", rad.count()}};
      break;
    }
  }
  if (nonvacuous) *nonvacuous = count;
  if (count == 0) return skipped("thm-1.7", a.descriptor, "vacuous", sw);
  return report("thm-1.7", a.descriptor, w.is_null(), w, sw);
}

std::vector<VerificationReport> verify_thm_1_7(const Corpus& corpus,
                                               const PredicateSet& preds) {
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < corpus.modules.size(); ++i) {
    Stopwatch sw;
    try {
      auto a = analyze_module(corpus.build(i), corpus.instance_json(i),
                              corpus.descriptor(i), corpus.config.budget, preds);
      out.push_back(verify_thm_1_7(a, preds));
    } catch (const BudgetExceeded& e) {
      out.push_back(skipped("thm-1.7", corpus.descriptor(i), std::string("budget: ") + e.budget(), sw));
    }
  }
  return out;
}

namespace {

/// Lemmas used inside the GPIT proof, checked once per module.
std::vector<VerificationReport> gpit_lemmas(const ModuleAnalysis& a, const Budget& budget,
                                            const PredicateSet& preds) {
  std::vector<VerificationReport> out;
  const auto& m = *a.module;
  {
    Stopwatch sw;
    json w;
    for (auto [i, j] : a.spec.edges) {
      const auto ci = colon(a.spec.nodes[i]);
      const auto cj = colon(a.spec.nodes[j]);
      if (!(ci.size() < cj.size() && ci.elements().subset_of(cj.elements()))) {
        w = {{"instance", a.instance},
             {"lower", sub_json(a.spec.nodes[i])},
             {"upper", sub_json(a.spec.nodes[j])}};
        break;
      }
    }
    if (a.spec.edges.empty())
      out.push_back(skipped("thm-2.3-lemma-colon-chain", a.descriptor, "vacuous", sw));
    else
      out.push_back(report("thm-2.3-lemma-colon-chain", a.descriptor, w.is_null(), w, sw));
  }
  {
    Stopwatch sw;
    json w;
    for (const auto& p : a.spec.nodes) {
      const auto c = colon(p);
      const std::size_t quotient_order = m.order() / p.size();
      const std::size_t residue_order = m.ring().order() / c.size();
      if (quotient_order != residue_order) {
        w = {{"instance", a.instance},
             {"submodule", sub_json(p)},
             {"quotient_order", quotient_order},
             {"residue_order", residue_order}};
        break;
      }
    }
    if (a.spec.nodes.empty())
      out.push_back(skipped("thm-2.3-lemma-quotient-dim", a.descriptor, "vacuous", sw));
    else
      out.push_back(report("thm-2.3-lemma-quotient-dim", a.descriptor, w.is_null(), w, sw));
  }
  {
    Stopwatch sw;
    json w;
    std::vector<ElemSet> done;
    for (const auto& p : a.spec.nodes) {
      const auto c = colon(p);
      if (std::find(done.begin(), done.end(), c.elements()) != done.end()) continue;
      done.push_back(c.elements());
      const auto u = complement_multset(c);
      if (!u) {
        w = {{"instance", a.instance},
             {"failed", "complement of (P:M) is not multiplicatively closed"},
             {"colon", ideal_json(c)}};
        break;
      }
      for (const auto& r : verify_thm_1_5(a, *u, budget, preds))
        if (!r.passed()) {
          w = {{"instance", a.instance}, {"colon", ideal_json(c)},
               {"localization_report", to_json(r)}};
          break;
        }
      if (!w.is_null()) break;
    }
    if (a.spec.nodes.empty())
      out.push_back(skipped("thm-2.3-lemma-localization", a.descriptor, "vacuous", sw));
    else
      out.push_back(report("thm-2.3-lemma-localization", a.descriptor, w.is_null(), w, sw));
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> verify_thm_2_3(const ModuleAnalysis& a,
                                               const std::vector<ElemId>& gens,
                                               const Budget& budget,
                                               const PredicateSet& preds) {
  Stopwatch sw;
  const auto n = submodule_generate(a.module, gens);
  if (!n.is_proper())
    throw PreconditionError("thm-2.3: the generated submodule must be proper");
  std::string desc = a.descriptor + "; N=" + describe(n);
  const auto cert = is_flat(a.module);
  if (!cert.flat) {
    json w = json::array();
    for (const auto& l : cert.locals)
      w.push_back({{"maximal", ideal_json(l.maximal)},
                   {"complement_closed", l.complement_closed},
                   {"residue_dim", l.residue_dim},
                   {"local_module_order", l.local_module_order},
                   {"local_ring_order", l.local_ring_order}});
    return {skipped("thm-2.3", desc, "hypothesis", sw, {{"flatness", w}})};
  }
  const auto h = s_ht(n, a.spec);
  const bool ok = !h.value || *h.value <= gens.size();
  json w;
  if (!ok)
    w = {{"instance", a.instance}, {"submodule", sub_json(n)},
         {"generators", gens.size()}, {"s_ht", *h.value}};
  std::vector<VerificationReport> out{report("thm-2.3", desc, ok, w, sw)};
  for (auto& r : gpit_lemmas(a, budget, preds)) out.push_back(std::move(r));
  return out;
}

std::vector<VerificationReport> verify_thm_2_3_enumerated(const ModuleAnalysis& a,
                                                          const CorpusConfig& config,
                                                          std::uint64_t seed,
                                                          const PredicateSet& preds) {
  Stopwatch sw;
  const auto& m = *a.module;
  const auto cert = is_flat(a.module);
  if (!cert.flat)
    return {skipped("thm-2.3", a.descriptor, "hypothesis", sw)};

  std::unordered_map<ElemSet, std::size_t, ElemSetHash> index;
  for (std::size_t i = 0; i < a.lattice.size(); ++i) index.emplace(a.lattice[i].elements(), i);
  constexpr std::size_t none = ~std::size_t{0};
  std::vector<std::size_t> fewest(a.lattice.size(), none);
  const auto note = [&](const ElemSet& s, std::size_t n) {
    auto& f = fewest.at(index.at(s));
    f = std::min(f, n);
  };

  // Lists of size 0 and 1, then pairs up to equality of cyclic submodules.
  ElemSet zero(m.order());
  zero.insert(m.zero());
  note(zero, 0);
  std::vector<ElemSet> cyclics;
  std::vector<ElemId> cyclic_gen;
  {
    std::unordered_set<ElemSet, ElemSetHash> seen;
    for (ElemId x = 0; x < m.order(); ++x) {
      auto c = cyclic_elements(m, x);
      if (seen.insert(c).second) {
        note(c, 1);
        cyclics.push_back(std::move(c));
        cyclic_gen.push_back(x);
      }
    }
  }
  const auto add = [&](std::uint32_t p, std::uint32_t q) { return m.add(p, q); };
  for (std::size_t i = 0; i < cyclics.size(); ++i)
    for (std::size_t j = i + 1; j < cyclics.size(); ++j) {
      if (cyclics[j].subset_of(cyclics[i]) || cyclics[i].subset_of(cyclics[j])) continue;
      note(kernels::subgroup_sum(cyclics[i], cyclics[j], add), 2);
    }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<ElemId>> triples;
  if (m.order() >= 3)
    for (std::size_t t = 0; t < config.random_triples; ++t) {
      std::uniform_int_distribution<ElemId> pick(0, static_cast<ElemId>(m.order() - 1));
      std::vector<ElemId> g;
      while (g.size() < 3) {
        const auto x = pick(rng);
        if (std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
      }
      note(submodule_generate(a.module, g).elements(), 3);
      triples.push_back(std::move(g));
    }

  json w;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < a.lattice.size() && w.is_null(); ++i) {
    if (fewest[i] == none || !a.lattice[i].is_proper()) continue;
    ++checked;
    const auto h = s_ht(a.lattice[i], a.spec);
    if (h.value && *h.value > fewest[i])
      w = {{"instance", a.instance},
           {"submodule", sub_json(a.lattice[i])},
           {"generators", fewest[i]},
           {"s_ht", *h.value}};
  }
  std::vector<VerificationReport> out;
  if (checked == 0)
    out.push_back(skipped("thm-2.3", a.descriptor, "vacuous", sw));
  else
    out.push_back(report("thm-2.3", a.descriptor, w.is_null(), w, sw));
  for (auto& r : gpit_lemmas(a, config.budget, preds)) out.push_back(std::move(r));
  return out;
}

std::vector<VerificationReport> verify_antichain(const ModuleAnalysis& a) {
  std::vector<VerificationReport> out;
  {
    Stopwatch sw;
    json w;
    if (!a.spec.edges.empty()) {
      const auto [i, j] = a.spec.edges.front();
      w = {{"instance", a.instance},
           {"lower", sub_json(a.spec.nodes[i])},
           {"upper", sub_json(a.spec.nodes[j])}};
    }
    out.push_back(report("antichain", a.descriptor, w.is_null(), w, sw));
  }
  {
    Stopwatch sw;
    json w;
    const auto in = [](const std::vector<Submodule>& xs, const Submodule& s) {
      return std::find(xs.begin(), xs.end(), s) != xs.end();
    };
    for (const auto& p : a.spec.nodes)
      if (!in(a.maximal, p)) {
        w = {{"instance", a.instance}, {"strongly_prime_not_maximal", sub_json(p)}};
        break;
      }
    if (w.is_null())
      for (const auto& p : a.maximal)
        if (!in(a.spec.nodes, p)) {
          w = {{"instance", a.instance}, {"maximal_not_strongly_prime", sub_json(p)}};
          break;
        }
    out.push_back(report("sspec-eq-max", a.descriptor, w.is_null(), w, sw));
  }
  return out;
}

std::vector<VerificationReport> verify_derived(const ModuleAnalysis& a,
                                               const PredicateSet& preds,
                                               std::vector<json>* exploratory) {
  std::vector<VerificationReport> out;
  const auto order = a.module->order();
  {
    Stopwatch sw;
    json w;
    for (const auto& p : a.spec.nodes)
      if (!preds.strongly_semiprime(p).holds) {
        w = {{"instance", a.instance}, {"submodule", sub_json(p)}};
        break;
      }
    if (a.spec.nodes.empty())
      out.push_back(skipped("sp-implies-ssp", a.descriptor, "vacuous", sw));
    else
      out.push_back(report("sp-implies-ssp", a.descriptor, w.is_null(), w, sw));
  }
  {
    Stopwatch sw;
    json w;
    for (const auto& n : a.lattice) {
      if (!n.is_proper() || !preds.prime(n).holds) continue;
      const auto s = preds.semiprime(n);
      if (!s.holds) {
        w = {{"instance", a.instance}, {"submodule", sub_json(n)}};
        if (s.witness)
          w["semiprime_witness"] = {{"r", s.witness->r},
                                    {"x", elem_json(*a.module, s.witness->x)}};
        break;
      }
    }
    if (a.module->is_zero())
      out.push_back(skipped("prime-implies-semiprime", a.descriptor, "vacuous", sw));
    else
      out.push_back(report("prime-implies-semiprime", a.descriptor, w.is_null(), w, sw));
  }

  // Radicals of every submodule; distinct values are intersections of
  // strongly primes.
  Stopwatch sw;
  json extensive, idempotent;
  std::unordered_set<ElemSet, ElemSetHash> radicals;
  for (const auto& n : a.lattice) {
    const auto rad = meet_above(n.elements(), a.spec, order);
    if (extensive.is_null() && !n.elements().subset_of(rad))
      extensive = {{"instance", a.instance}, {"submodule", sub_json(n)}};
    if (rad.count() < order) {
      if (idempotent.is_null() && !(meet_above(rad, a.spec, order) == rad))
        idempotent = {{"instance", a.instance}, {"submodule", sub_json(n)}};
      radicals.insert(rad);
    }
  }
  out.push_back(report("srad-extensive", a.descriptor, extensive.is_null(), extensive, sw));
  out.push_back(report("srad-idempotent", a.descriptor, idempotent.is_null(), idempotent, sw));

  {
    Stopwatch sw2;
    if (a.module->is_zero())
      out.push_back(skipped("max-ring-shadow", a.descriptor, "vacuous", sw2));
    else
      out.push_back(report("max-ring-shadow", a.descriptor, !a.spec.nodes.empty(),
                           {{"instance", a.instance}}, sw2));
  }

  if (exploratory) {
    std::size_t not_ssp = 0;
    json first;
    std::vector<ElemSet> sorted(radicals.begin(), radicals.end());
    kernels::sort_canonical(sorted);
    for (const auto& r : sorted) {
      const auto sub = submodule_from_elements(a.module, r);
      if (!preds.strongly_semiprime(sub).holds) {
        if (first.is_null()) first = sub_json(sub);
        ++not_ssp;
      }
    }
    exploratory->push_back({{"observation", "radical-is-strongly-semiprime"},
                            {"instance", a.descriptor},
                            {"radicals", sorted.size()},
                            {"not_strongly_semiprime", not_ssp},
                            {"first_counterexample", first}});
  }
  return out;
}

VerificationReport verify_ring_localization(const MultSet& mult) {
  Stopwatch sw;
  const auto& r = mult.ring();
  const std::string desc = "R=" + r.label() + "; U=" + set_name(r, mult.elements());
  json w;
  const auto fail = [&](const std::string& what) {
    if (w.is_null()) w = {{"failed", what}, {"multset", mult.element_list()}};
  };

  const auto loc = localize_ring(mult);
  const auto units = mult.element_list();
  for (Elem a = 0; a < r.order(); ++a) {
    const bool killed = std::any_of(units.begin(), units.end(),
                                    [&](Elem u) { return r.mul(u, a) == r.zero(); });
    if (killed != loc.kernel.contains(a)) fail("K differs from {r | ur = 0}");
  }
  if (loc.degenerate) {
    if (loc.kernel.size() != r.order()) fail("degenerate localization with K != R");
    if (!w.is_null()) return report("loc-postconditions", desc, false, w, sw);
    return skipped("loc-postconditions", desc, "degenerate", sw);
  }

  const auto& map = loc.map;
  const auto& t = *map.target;
  if (!validate_ring(t).ok()) fail("localized ring violates an axiom");
  if (!is_ring_homomorphism(map)) fail("localization map is not a ring map");
  for (Elem a = 0; a < r.order(); ++a)
    if ((map(a) == t.zero()) != loc.kernel.contains(a)) fail("ker(R -> U^-1 R) != K");
  for (auto u : units)
    if (!t.is_unit(map(u))) fail("denominator not invertible");
  return report("loc-postconditions", desc, w.is_null(), w, sw);
}

VerificationReport verify_localization(const ModulePtr& mp, const MultSet& mult) {
  Stopwatch sw;
  const auto& m = *mp;
  const auto& r = m.ring();
  const std::string desc = "M=" + m.label() + "; U=" + set_name(r, mult.elements());
  json w;
  const auto fail = [&](const std::string& what) {
    if (w.is_null()) w = {{"failed", what}, {"multset", mult.element_list()}};
  };

  std::optional<ModuleLocalization> computed;
  try {
    computed = localize_module(mp, mult);
  } catch (const std::logic_error& e) {
    fail(e.what());
    return report("loc-postconditions", desc, false, w, sw);
  }
  const auto& loc = *computed;

  const auto units = mult.element_list();
  for (ElemId x = 0; x < m.order(); ++x) {
    const bool killed = std::any_of(units.begin(), units.end(),
                                    [&](Elem u) { return m.smul(u, x) == m.zero(); });
    if (killed != loc.torsion.contains(x)) fail("T differs from {x | ux = 0}");
  }
  if (loc.degenerate) {
    if (!w.is_null()) return report("loc-postconditions", desc, false, w, sw);
    return skipped("loc-postconditions", desc, "degenerate", sw);
  }

  const auto& map = loc.ring.map;
  const auto& lm = *loc.module;
  for (auto u : units) {
    ElemSet img(lm.order());
    for (ElemId y = 0; y < lm.order(); ++y) img.insert(lm.smul(map(u), y));
    if (img.count() != lm.order()) fail("denominator does not act bijectively");
  }
  for (ElemId x = 0; x < m.order(); ++x) {
    if ((loc.projection[x] == lm.zero()) != loc.torsion.contains(x))
      fail("ker(M -> U^-1 M) != T");
    for (Elem a = 0; a < r.order(); ++a)
      if (loc.projection[m.smul(a, x)] != lm.smul(map(a), loc.projection[x]))
        fail("projection is not semilinear");
  }
  for (ElemId x = 0; x < m.order(); ++x)
    for (ElemId y = 0; y < m.order(); y += 1 + m.order() / 64)
      if (loc.projection[m.add(x, y)] != lm.add(loc.projection[x], loc.projection[y]))
        fail("projection is not additive");
  if (!w.is_null()) w["module"] = m.label();
  return report("loc-postconditions", desc, w.is_null(), w, sw);
}

void finalize(RunBundle& bundle) {
  std::stable_sort(bundle.reports.begin(), bundle.reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) {
                     return std::tie(a.claim, a.instance) < std::tie(b.claim, b.instance);
                   });
  bundle.passed = bundle.failed = bundle.skipped = 0;
  for (const auto& r : bundle.reports) {
    if (r.passed()) ++bundle.passed;
    else if (r.failed()) ++bundle.failed;
    else ++bundle.skipped;
  }
}

RunBundle run_all(const RunConfig& config) {
  const auto wants = [&](const std::string& claim) {
    if (config.claims.empty()) return true;
    return std::any_of(config.claims.begin(), config.claims.end(), [&](const std::string& c) {
      return claim.rfind(c, 0) == 0 || c.rfind(claim, 0) == 0;
    });
  };
  const auto& preds = config.predicates;
  const auto corpus = build_corpus(config.corpus);
  const auto& budget = corpus.config.budget;
  RunBundle bundle;

  std::vector<std::vector<MultSet>> multsets;
  for (const auto& cr : corpus.rings) {
    multsets.push_back(canonical_multsets(cr.ring));
    if (wants("ring-axioms")) {
      Stopwatch sw;
      const auto v = validate_ring(*cr.ring);
      json w;
      if (!v.ok()) w = {{"axiom", v.violations.front().axiom}};
      bundle.reports.push_back(report("ring-axioms", "R=" + cr.ring->label(), v.ok(), w, sw));
    }
    if (wants("loc-postconditions"))
      for (const auto& u : multsets.back()) bundle.reports.push_back(verify_ring_localization(u));
    if (wants("ex-1.2") && cr.ring->order() * cr.ring->order() <= budget.max_module_order)
      for (const auto& p : enumerate_ideals(cr.ring))
        if (is_prime_ideal(p)) bundle.reports.push_back(verify_example_1_2(p, preds));
  }

  if (wants("prop-1.3")) {
    const std::vector<std::pair<RingSpec, std::size_t>> spaces{
        {RingSpec::zmod(2), 1}, {RingSpec::zmod(2), 2}, {RingSpec::zmod(2), 3},
        {RingSpec::zmod(3), 1}, {RingSpec::zmod(3), 2},
        {RingSpec::polyquo(2, {1, 1, 1}), 1}, {RingSpec::polyquo(2, {1, 1, 1}), 2},
        {RingSpec::zmod(5), 1}, {RingSpec::zmod(5), 2},
        {RingSpec::zmod(7), 1}, {RingSpec::zmod(7), 2},
        {RingSpec::polyquo(2, {1, 1, 0, 1}), 2}, {RingSpec::polyquo(3, {1, 0, 1}), 2}};
    for (const auto& [f, k] : spaces) bundle.reports.push_back(verify_prop_1_3(f, k, budget));
  }

  const bool module_claims =
      wants("prop-1.1") || wants("thm-1.5") || wants("cor-1.6") || wants("thm-1.7") ||
      wants("thm-2.3") || wants("antichain") || wants("sspec-eq-max") ||
      wants("sp-implies-ssp") || wants("prime-implies-semiprime") || wants("srad") ||
      wants("max-ring-shadow") || wants("loc-postconditions");
  const std::size_t count = module_claims ? corpus.modules.size() : 0;
  std::vector<std::vector<VerificationReport>> per(count);
  std::vector<std::vector<json>> notes(count);

  const auto work = [&](std::size_t i) {
    auto& out = per[i];
    const auto keep = [&](std::vector<VerificationReport> rs) {
      for (auto& r : rs)
        if (wants(r.claim)) out.push_back(std::move(r));
    };
    Stopwatch sw;
    const auto ri = corpus.modules[i].ring_index;
    std::string desc = "M=?";
    try {
      const auto m = corpus.build(i);
      desc = "M=" + m->label();
      if (wants("loc-postconditions"))
        for (const auto& u : multsets[ri]) out.push_back(verify_localization(m, u));
      const auto a = analyze_module(m, corpus.instance_json(i), desc, budget, preds,
                                    Exec::Serial);
      keep(verify_prop_1_1(a, preds));
      keep(verify_antichain(a));
      if (wants("thm-1.7")) out.push_back(verify_thm_1_7(a, preds));
      if (wants("sp-implies-ssp") || wants("prime-implies-semiprime") || wants("srad") ||
          wants("max-ring-shadow"))
        keep(verify_derived(a, preds, &notes[i]));
      if (wants("thm-2.3"))
        keep(verify_thm_2_3_enumerated(a, corpus.config, corpus.config.seed + i, preds));
      if (wants("thm-1.5") || wants("cor-1.6"))
        for (const auto& u : multsets[ri]) keep(verify_thm_1_5(a, u, budget, preds));
    } catch (const BudgetExceeded& e) {
      out.push_back(skipped("analysis", desc, "budget: " + e.budget(), sw));
    } catch (const std::exception& e) {
      out.push_back(report("analysis", desc, false,
                           {{"error", e.what()}, {"instance", corpus.instance_json(i)}}, sw));
    }
  };

  if (config.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i)
      work(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) work(i);
  }
  for (auto& rs : per)
    for (auto& r : rs) bundle.reports.push_back(std::move(r));
  for (auto& ns : notes)
    for (auto& n : ns) bundle.exploratory.push_back(std::move(n));
  finalize(bundle);
  return bundle;
}

}  // namespace spm

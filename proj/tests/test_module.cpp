#include <gtest/gtest.h>

#include <unordered_set>

#include "spm/errors.hpp"
#include "spm/module.hpp"
#include "test_support.hpp"

using namespace spm;
using testing_support::small_modules;

namespace {

ElemId v(const ModulePtr& m, Vec x) { return m->reduce(x); }

std::vector<Elem> ring_elems(const Ideal& i) { return i.element_list(); }

}  // namespace

TEST(Free, Orders) {
  EXPECT_EQ(make_free(make_zmod(4), 2)->order(), 16u);
  EXPECT_EQ(make_free(make_zmod(6), 1)->order(), 6u);
  EXPECT_EQ(make_free(make_zmod(2), 3)->order(), 8u);
  EXPECT_EQ(make_free(make_zmod(3), 0)->order(), 1u);
  EXPECT_TRUE(make_free(make_zmod(3), 0)->is_zero());
}

TEST(Free, Labels) {
  EXPECT_EQ(make_free(make_zmod(4), 2)->label(), "(Z/4)^2");
  EXPECT_EQ(make_free(make_zmod(6), 1)->label(), "Z/6");
  EXPECT_EQ(FinModule::create(make_zmod(4), 2, {{2, 0}})->label(), "(Z/4)^2 / <[2,0]>");
}

TEST(Free, BudgetOnAmbientSize) {
  Budget b;
  b.max_ambient = 100;
  EXPECT_THROW(make_free(make_zmod(11), 2, b), BudgetExceeded);
}

TEST(Create, PositionedErrors) {
  try {
    FinModule::create(make_zmod(4), 2, {{1, 0}, {1, 2, 3}});
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("module.relations[1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(FinModule::create(make_zmod(4), 1, {{7}}), InvalidInput);
}

TEST(Create, ElementZeroAndColexOrder) {
  auto m = make_free(make_zmod(3), 2);
  EXPECT_EQ(m->zero(), 0u);
  EXPECT_EQ(m->vector_of(1), (Vec{1, 0}));
  EXPECT_EQ(m->vector_of(3), (Vec{0, 1}));
  EXPECT_EQ(m->element_name(5), "[2,1]");
}

TEST(Create, QuotientRepresentativesAreMinimal) {
  auto m = FinModule::create(make_zmod(6), 1, {{2}});
  ASSERT_EQ(m->order(), 2u);
  EXPECT_EQ(m->vector_of(1), (Vec{1}));
  EXPECT_EQ(m->reduce(Vec{5}), 1u);
  EXPECT_EQ(m->reduce(Vec{4}), 0u);
}

TEST(Submodules, Generate) {
  auto m = make_free(make_zmod(4), 2);
  auto s = submodule_generate(m, {v(m, {2, 0})});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(v(m, {2, 0})));
  EXPECT_TRUE(s.contains(m->zero()));
  EXPECT_EQ(describe(zero_submodule(m)), "0");
  EXPECT_EQ(whole_module(m).size(), 16u);
  EXPECT_THROW(submodule_generate(m, {99}), InvalidInput);
}

TEST(Submodules, FromElementsRejectsNonSubmodule) {
  auto m = make_free(make_zmod(4), 1);
  ElemSet s(4);
  s.insert(0);
  s.insert(1);
  EXPECT_THROW(submodule_from_elements(m, s), InvalidInput);
}

TEST(Quotient, Z6ByTwo) {
  auto m = make_free(make_zmod(6), 1);
  auto q = quotient(submodule_generate(m, {2}));
  EXPECT_EQ(q.module->order(), 2u);
  EXPECT_EQ(q.projection[3], 1u);
  EXPECT_EQ(q.projection[4], 0u);
}

TEST(Colon, Examples) {
  auto m = make_free(make_zmod(4), 2);
  auto n = submodule_generate(m, {v(m, {2, 0}), v(m, {0, 2})});
  EXPECT_EQ(ring_elems(colon(n)), (std::vector<Elem>{0, 2}));
  auto z6 = make_free(make_zmod(6), 1);
  EXPECT_EQ(ring_elems(colon_cyclic(zero_submodule(z6), 3)), (std::vector<Elem>{0, 3}));
  EXPECT_EQ(colon(whole_module(z6)).size(), 6u);
}

TEST(Colon, AnnihilatesQuotient) {
  for (const auto& m : small_modules())
    for (const auto& n : enumerate_submodules(m)) {
      auto c = colon(n);
      for (auto r : c.element_list())
        for (ElemId x = 0; x < m->order(); ++x) {
          ASSERT_TRUE(n.contains(m->smul(r, x)));
        }
      for (Elem r = 0; r < m->ring().order(); ++r) {
        if (c.contains(r)) continue;
        bool escapes = false;
        for (ElemId x = 0; x < m->order() && !escapes; ++x) escapes = !n.contains(m->smul(r, x));
        ASSERT_TRUE(escapes);
      }
    }
}

TEST(Colon, CyclicIsCosetInvariant) {
  for (const auto& m : small_modules())
    for (const auto& n : enumerate_submodules(m)) {
      for (ElemId x = 0; x < m->order(); ++x) {
        auto base = colon_cyclic(n, x);
        for (auto y : n.generators()) {
          ASSERT_EQ(colon_cyclic(n, m->add(x, y)), base);
        }
      }
    }
}

TEST(Lattice, Counts) {
  EXPECT_EQ(enumerate_submodules(make_free(make_zmod(2), 2)).size(), 5u);
  EXPECT_EQ(enumerate_submodules(make_free(make_zmod(6), 1)).size(), 4u);
  // subspaces of F_2^3: 1 + 7 + 7 + 1
  EXPECT_EQ(enumerate_submodules(make_free(make_zmod(2), 3)).size(), 16u);
  EXPECT_EQ(enumerate_submodules(make_free(make_zmod(3), 0)).size(), 1u);
}

TEST(Lattice, ClosedUnderMeetAndJoinAndCanonical) {
  for (const auto& m : small_modules()) {
    auto lat = enumerate_submodules(m);
    std::unordered_set<ElemSet, ElemSetHash> sets;
    for (const auto& s : lat) sets.insert(s.elements());
    ASSERT_EQ(sets.size(), lat.size()) << m->label();
    for (std::size_t i = 1; i < lat.size(); ++i)
      ASSERT_TRUE(canonical_less(lat[i - 1].elements(), lat[i].elements())) << m->label();
    for (const auto& a : lat)
      for (const auto& b : lat) {
        ASSERT_TRUE(sets.count(submodule_sum(a, b).elements()));
        ASSERT_TRUE(sets.count(submodule_intersection(a, b).elements()));
      }
    // every cyclic submodule is present
    for (ElemId x = 0; x < m->order(); ++x) {
      ASSERT_TRUE(sets.count(cyclic_elements(*m, x)));
    }
  }
}

TEST(Lattice, Lagrange) {
  for (const auto& m : small_modules())
    for (const auto& n : enumerate_submodules(m)) {
      ASSERT_EQ(m->order() % n.size(), 0u);
      ASSERT_EQ(quotient(n).module->order() * n.size(), m->order());
      ASSERT_EQ(coset_representatives(n).size() * n.size(), m->order());
    }
}

TEST(Lattice, Budgets) {
  Budget b;
  b.max_submodules = 10;
  EXPECT_THROW(enumerate_submodules(make_free(make_zmod(2), 3), b), BudgetExceeded);
  Budget o;
  o.max_module_order = 8;
  EXPECT_THROW(enumerate_submodules(make_free(make_zmod(3), 2), o), BudgetExceeded);
  try {
    enumerate_submodules(make_free(make_zmod(2), 3), b);
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.budget(), "max-submodules");
  }
}

TEST(Lattice, SerialAndParallelAgree) {
  for (const auto& m : small_modules()) {
    auto a = enumerate_submodules(m, {}, Exec::Serial);
    auto b = enumerate_submodules(m, {}, Exec::Parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a[i], b[i]);
    }
  }
}

TEST(Maximal, Examples) {
  auto f2sq = make_free(make_zmod(2), 2);
  EXPECT_EQ(maximal_submodules(f2sq).size(), 3u);
  auto z4 = make_free(make_zmod(4), 1);
  auto mz4 = maximal_submodules(z4);
  ASSERT_EQ(mz4.size(), 1u);
  EXPECT_EQ(mz4[0].element_list(), (std::vector<ElemId>{0, 2}));
  EXPECT_TRUE(maximal_submodules(make_free(make_zmod(4), 0)).empty());
}

TEST(Maximal, MatchesLatticeCovers) {
  for (const auto& m : small_modules()) {
    auto lat = enumerate_submodules(m);
    for (const auto& s : lat) {
      bool maximal = s.is_proper();
      for (const auto& t : lat)
        if (t.is_proper() && t.size() > s.size() && s.is_subset_of(t)) maximal = false;
      ASSERT_EQ(maximal, is_maximal_submodule(s)) << m->label() << " " << describe(s);
    }
  }
}

TEST(LocalizeModule, Z6) {
  auto m = make_free(make_zmod(6), 1);
  auto z6 = m->ring_ptr();
  auto a = localize_module(m, saturate(z6, {3}));
  EXPECT_EQ(a.module->order(), 2u);
  auto b = localize_module(m, saturate(z6, {2}));
  EXPECT_EQ(b.module->order(), 3u);
  auto two = submodule_generate(m, {2});
  EXPECT_EQ(image_submodule(two, a).size(), 1u);
  auto pre = preimage_submodule(zero_submodule(a.module), a);
  EXPECT_EQ(pre.element_list(), (std::vector<ElemId>{0, 2, 4}));
}

TEST(LocalizeModule, DegenerateRejectsImage) {
  auto m = make_free(make_zmod(4), 1);
  auto loc = localize_module(m, saturate(m->ring_ptr(), {2}));
  EXPECT_TRUE(loc.degenerate);
  EXPECT_EQ(loc.torsion.size(), 4u);
  EXPECT_THROW(image_submodule(zero_submodule(m), loc), PreconditionError);
}

TEST(LocalizeModule, TorsionMatchesDefinition) {
  for (const auto& m : small_modules()) {
    const auto& r = m->ring_ptr();
    for (Elem s = 0; s < r->order(); ++s) {
      auto u = saturate(r, {s});
      auto loc = localize_module(m, u);
      for (ElemId x = 0; x < m->order(); ++x) {
        bool killed = false;
        for (auto a : u.element_list()) killed |= m->smul(a, x) == m->zero();
        ASSERT_EQ(killed, loc.torsion.contains(x));
      }
      if (loc.degenerate) continue;
      // U^{-1}M = M/T
      ASSERT_EQ(loc.module->order() * loc.torsion.size(), m->order());
      // preimage of an image contains the original and T
      for (const auto& n : enumerate_submodules(m)) {
        auto back = preimage_submodule(image_submodule(n, loc), loc);
        ASSERT_TRUE(n.is_subset_of(back));
        ASSERT_TRUE(loc.torsion.is_subset_of(back));
      }
    }
  }
}

TEST(Flat, Examples) {
  auto z4 = make_zmod(4);
  EXPECT_TRUE(is_flat(make_free(z4, 2)).flat);
  EXPECT_FALSE(is_flat(FinModule::create(z4, 1, {{2}})).flat);
  EXPECT_TRUE(is_flat(make_free(make_zmod(6), 1)).flat);
  // Z/6 / (2) is a direct summand of Z/6
  EXPECT_TRUE(is_flat(FinModule::create(make_zmod(6), 1, {{2}})).flat);
}

TEST(Flat, CertificateLists) {
  auto cert = is_flat(FinModule::create(make_zmod(4), 1, {{2}}));
  ASSERT_EQ(cert.locals.size(), 1u);
  EXPECT_EQ(cert.locals[0].residue_dim, 1u);
  EXPECT_EQ(cert.locals[0].local_module_order, 2u);
  EXPECT_EQ(cert.locals[0].local_ring_order, 4u);
  EXPECT_FALSE(cert.locals[0].free);
}

TEST(MinGenerators, Local) {
  auto z4 = make_zmod(4);
  EXPECT_EQ(min_generators_local(make_free(z4, 2)), 2u);
  EXPECT_EQ(min_generators_local(FinModule::create(z4, 1, {{2}})), 1u);
  EXPECT_EQ(min_generators_local(make_free(z4, 0)), 0u);
  EXPECT_THROW(min_generators_local(make_free(make_zmod(6), 1)), PreconditionError);
}

TEST(MinGenerators, AgreesWithSmallestGeneratingSet) {
  auto dual = make_poly_quotient(make_zmod(2), {0, 0, 1});
  std::vector<ModulePtr> mods = {make_free(make_zmod(8), 2),
                                 FinModule::create(make_zmod(8), 2, {{2, 4}}),
                                 FinModule::create(dual, 2, {{2, 1}}), make_free(dual, 1)};
  for (const auto& m : mods) {
    std::size_t best = m->is_zero() ? 0 : 3;
    for (ElemId a = 0; a < m->order(); ++a) {
      if (submodule_generate(m, {a}).size() == m->order()) best = std::min<std::size_t>(best, 1);
      for (ElemId b = 0; b < m->order(); ++b)
        if (submodule_generate(m, {a, b}).size() == m->order())
          best = std::min<std::size_t>(best, 2);
    }
    EXPECT_EQ(min_generators_local(m), best) << m->label();
  }
}

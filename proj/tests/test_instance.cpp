#include <gtest/gtest.h>

#include <random>

#include "spm/errors.hpp"
#include "spm/instance.hpp"

using namespace spm;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

}  // namespace

TEST(Parse, RingOverItself) {
  auto spec = parse_instance(R"({"ring": {"zmod": 6}, "module": {"free": 1}})");
  auto inst = resolve_instance(spec);
  EXPECT_EQ(inst.module->order(), 6u);
  EXPECT_EQ(inst.module->label(), "Z/6");
}

TEST(Parse, ModuleDefaultsToRingItself) {
  auto inst = resolve_instance(parse_instance(R"({"ring": {"zmod": 5}})"));
  EXPECT_EQ(inst.module->order(), 5u);
}

TEST(Parse, TwoTimesTwoInstance) {
  auto spec = parse_instance(
      R"({"ring": {"zmod": 4}, "module": {"free": 2}, "submodules": {"N": [[2,0],[0,2]]}})");
  auto inst = resolve_instance(spec);
  ASSERT_EQ(inst.submodules.size(), 1u);
  EXPECT_EQ(inst.submodules[0].first, "N");
  EXPECT_EQ(inst.submodules[0].second.size(), 4u);
}

TEST(Parse, ProductsPolyquoMultsetIdeal) {
  auto spec = parse_instance(R"({
    "ring": {"product": [{"zmod": 2}, {"polyquo": {"base": 2, "modulus": [1, 1, 1]}}]},
    "module": {"free": 1, "relations": []},
    "multset": [3],
    "ideal": [1]
  })");
  auto inst = resolve_instance(spec);
  EXPECT_EQ(inst.ring->order(), 8u);
  ASSERT_TRUE(inst.multset);
  ASSERT_TRUE(inst.ideal);
  EXPECT_EQ(inst.ideal->size(), 2u);
}

TEST(Parse, PositionedErrors) {
  EXPECT_TRUE(starts_with(
      error_of(R"({"ring": {"zmod": 4}, "module": {"free": 2, "relations": [[1,2,3]]}})"),
      "module.relations[0]"));
  EXPECT_TRUE(starts_with(error_of(R"({"ring": {"zmod": 4}, "submodules": {"N": [[9]]}})"),
                          "submodules.N[0]"));
  EXPECT_TRUE(starts_with(error_of(R"({"ring": {"gf": 4}})"), "ring"));
  EXPECT_NE(error_of(R"({"ring": {"gf": 4}})").find("unknown constructor"), std::string::npos);
  EXPECT_TRUE(starts_with(error_of(R"({"ring": {"zmod": 1}})"), "ring.zmod"));
  EXPECT_TRUE(starts_with(error_of(R"({"ring": {"zmod": 4}, "colour": 1})"), "colour"));
  EXPECT_TRUE(starts_with(error_of(R"({"ring": {"zmod": 4}, "multset": [4]})"), "multset"));
  EXPECT_TRUE(starts_with(
      error_of(R"({"ring": {"polyquo": {"base": 2, "modulus": [1, 1, 0]}}})"),
      "ring.polyquo.modulus"));
  EXPECT_TRUE(starts_with(error_of(R"({"ring": {"product": [{"zmod": 2}]}})"), "ring.product"));
  EXPECT_TRUE(starts_with(error_of("{not json"), "instance"));
  EXPECT_TRUE(starts_with(error_of(R"({"module": {"free": 1}})"), "ring"));
}

TEST(RoundTrip, RenderedSpecsReparse) {
  std::mt19937_64 rng(7);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::function<RingSpec(int)> random_ring = [&](int depth) -> RingSpec {
    switch (depth > 0 ? pick(0, 2) : pick(0, 1) * 2) {
      case 0:
        return RingSpec::zmod(pick(2, 12));
      case 1:
        return RingSpec::product({random_ring(depth - 1), random_ring(depth - 1)});
      default:
        return RingSpec::polyquo(2, {1, pick(0, 1), 1});
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    InstanceSpec spec;
    spec.ring = random_ring(1);
    const auto order = build_ring(spec.ring)->order();
    spec.module.rank = pick(0, 3);
    auto vec = [&] {
      Vec v(spec.module.rank);
      for (auto& c : v) c = static_cast<Elem>(pick(0, order - 1));
      return v;
    };
    for (std::size_t i = pick(0, 2); i-- > 0;) spec.module.relations.push_back(vec());
    for (std::size_t i = pick(0, 2); i-- > 0;)
      spec.submodules.push_back({"S" + std::to_string(i), {vec(), vec()}});
    if (pick(0, 1)) spec.multset = std::vector<Elem>{static_cast<Elem>(pick(0, order - 1))};
    if (pick(0, 1)) spec.ideal = std::vector<Elem>{static_cast<Elem>(pick(0, order - 1))};
    const auto text = render_instance(spec);
    EXPECT_EQ(parse_instance(text), spec) << text;
    EXPECT_EQ(render_instance(parse_instance(text)), text);
  }
}

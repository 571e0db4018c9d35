#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spm/module.hpp"
#include "spm/ring.hpp"

namespace spm {

using json = nlohmann::ordered_json;

/// Ring constructor descriptor: zmod n, product of rings, or Z/base[x]/(f).
struct RingSpec {
  enum class Kind { Zmod, Product, PolyQuotient };
  Kind kind = Kind::Zmod;
  std::size_t n = 0;                    // zmod modulus, or polyquo base
  std::vector<RingSpec> factors;        // product
  std::vector<std::size_t> modulus;     // polyquo, ascending coefficients

  static RingSpec zmod(std::size_t n) { return {Kind::Zmod, n, {}, {}}; }
  static RingSpec product(std::vector<RingSpec> f) {
    return {Kind::Product, 0, std::move(f), {}};
  }
  static RingSpec polyquo(std::size_t base, std::vector<std::size_t> m) {
    return {Kind::PolyQuotient, base, {}, std::move(m)};
  }
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

struct ModuleSpec {
  std::size_t rank = 1;
  std::vector<Vec> relations;
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

struct NamedSubmodule {
  std::string name;
  std::vector<Vec> generators;
  friend bool operator==(const NamedSubmodule&, const NamedSubmodule&) = default;
};

struct InstanceSpec {
  RingSpec ring;
  ModuleSpec module;
  std::vector<NamedSubmodule> submodules;
  std::optional<std::vector<Elem>> multset;
  std::optional<std::vector<Elem>> ideal;
  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

RingPtr build_ring(const RingSpec& spec);
ModulePtr build_module(const RingPtr& ring, const ModuleSpec& spec,
                       const Budget& budget = {});

json to_json(const RingSpec& spec);
json to_json(const ModuleSpec& spec);
json to_json(const InstanceSpec& spec);

/// Throws InvalidInput whose message starts with the offending field path,
/// e.g. "module.relations[0]: vector length 3 != rank 2".
RingSpec parse_ring_spec(const json& j, const std::string& path = "ring");
InstanceSpec parse_instance(const json& j);
InstanceSpec parse_instance(const std::string& text);
inline InstanceSpec parse_instance(const char* text) { return parse_instance(std::string(text)); }
std::string render_instance(const InstanceSpec& spec);

/// Ring, module and named submodules built and range-checked.
struct Instance {
  InstanceSpec spec;
  RingPtr ring;
  ModulePtr module;
  std::vector<std::pair<std::string, Submodule>> submodules;
  std::optional<MultSet> multset;
  std::optional<Ideal> ideal;
};

Instance resolve_instance(const InstanceSpec& spec, const Budget& budget = {});

}  // namespace spm

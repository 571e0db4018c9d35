#include "spm/instance.hpp"

#include "spm/errors.hpp"

namespace spm {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw InvalidInput(path + ": " + what);
}

std::size_t as_index(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    bad(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> as_index_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_index(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Vec as_vec(const json& j, const std::string& path) {
  Vec v;
  for (auto x : as_index_list(j, path)) v.push_back(static_cast<Elem>(x));
  return v;
}

std::vector<Vec> as_vec_list(const json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_vec(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json elems_json(const std::vector<Elem>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

json vecs_json(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(elems_json(v));
  return a;
}

void check_vectors(const std::vector<Vec>& vs, std::size_t rank,
                   std::size_t ring_order, const std::string& path) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto p = path + "[" + std::to_string(i) + "]";
    if (vs[i].size() != rank)
      bad(p, "vector length " + std::to_string(vs[i].size()) + " != rank " +
                 std::to_string(rank));
    for (std::size_t c = 0; c < vs[i].size(); ++c)
      if (vs[i][c] >= ring_order)
        bad(p + "[" + std::to_string(c) + "]",
            "element index " + std::to_string(vs[i][c]) + " out of range (ring order " +
                std::to_string(ring_order) + ")");
  }
}

void check_elems(const std::vector<Elem>& es, std::size_t ring_order,
                 const std::string& path) {
  for (std::size_t i = 0; i < es.size(); ++i)
    if (es[i] >= ring_order)
      bad(path + "[" + std::to_string(i) + "]",
          "element index " + std::to_string(es[i]) + " out of range (ring order " +
              std::to_string(ring_order) + ")");
}

}  // namespace

RingPtr build_ring(const RingSpec& spec) {
  switch (spec.kind) {
    case RingSpec::Kind::Zmod:
      return make_zmod(spec.n);
    case RingSpec::Kind::Product: {
      std::vector<RingPtr> f;
      for (const auto& s : spec.factors) f.push_back(build_ring(s));
      return make_product(f);
    }
    case RingSpec::Kind::PolyQuotient:
      return make_poly_quotient(make_zmod(spec.n), spec.modulus);
  }
  throw InvalidInput("unknown ring kind");
}

ModulePtr build_module(const RingPtr& ring, const ModuleSpec& spec,
                       const Budget& budget) {
  return FinModule::create(ring, spec.rank, spec.relations, budget);
}

json to_json(const RingSpec& spec) {
  json j = json::object();
  switch (spec.kind) {
    case RingSpec::Kind::Zmod:
      j["zmod"] = spec.n;
      break;
    case RingSpec::Kind::Product: {
      json f = json::array();
      for (const auto& s : spec.factors) f.push_back(to_json(s));
      j["product"] = f;
      break;
    }
    case RingSpec::Kind::PolyQuotient: {
      json p = json::object();
      p["base"] = spec.n;
      json m = json::array();
      for (auto c : spec.modulus) m.push_back(c);
      p["modulus"] = m;
      j["polyquo"] = p;
      break;
    }
  }
  return j;
}

json to_json(const ModuleSpec& spec) {
  json j = json::object();
  j["free"] = spec.rank;
  j["relations"] = vecs_json(spec.relations);
  return j;
}

json to_json(const InstanceSpec& spec) {
  json j = json::object();
  j["ring"] = to_json(spec.ring);
  j["module"] = to_json(spec.module);
  json subs = json::object();
  for (const auto& s : spec.submodules) subs[s.name] = vecs_json(s.generators);
  j["submodules"] = subs;
  if (spec.multset) j["multset"] = elems_json(*spec.multset);
  if (spec.ideal) j["ideal"] = elems_json(*spec.ideal);
  return j;
}

RingSpec parse_ring_spec(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1)
    bad(path, "expected an object with exactly one constructor (zmod, product, polyquo)");
  const auto& [key, val] = *j.items().begin();
  const auto p = path + "." + key;
  if (key == "zmod") {
    const auto n = as_index(val, p);
    if (n < 2) bad(p, "trivial or empty ring (n < 2)");
    if (n > 4096) bad(p, "ring order exceeds 4096");
    return RingSpec::zmod(n);
  }
  if (key == "product") {
    if (!val.is_array()) bad(p, "expected an array of ring descriptors");
    if (val.size() < 2) bad(p, "at least two factors required");
    std::vector<RingSpec> f;
    for (std::size_t i = 0; i < val.size(); ++i)
      f.push_back(parse_ring_spec(val[i], p + "[" + std::to_string(i) + "]"));
    return RingSpec::product(std::move(f));
  }
  if (key == "polyquo") {
    if (!val.is_object() || !val.contains("base") || !val.contains("modulus"))
      bad(p, "expected {\"base\": n, \"modulus\": [c0, ..., 1]}");
    const auto base = as_index(val["base"], p + ".base");
    if (base < 2) bad(p + ".base", "trivial or empty ring (n < 2)");
    auto m = as_index_list(val["modulus"], p + ".modulus");
    if (m.size() < 2) bad(p + ".modulus", "degree must be at least 1");
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] >= base)
        bad(p + ".modulus[" + std::to_string(i) + "]", "coefficient out of range");
    if (m.back() != 1) bad(p + ".modulus", "modulus must be monic");
    return RingSpec::polyquo(base, std::move(m));
  }
  bad(path, "unknown constructor '" + key + "'");
}

InstanceSpec parse_instance(const json& j) {
  if (!j.is_object()) bad("instance", "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "ring" && key != "module" && key != "submodules" &&
        key != "multset" && key != "ideal")
      bad(key, "unknown field");
  if (!j.contains("ring")) bad("ring", "missing");

  InstanceSpec spec;
  spec.ring = parse_ring_spec(j["ring"]);
  if (j.contains("module")) {
    const auto& m = j["module"];
    if (!m.is_object()) bad("module", "expected an object");
    for (const auto& [key, _] : m.items())
      if (key != "free" && key != "relations") bad("module." + key, "unknown field");
    if (!m.contains("free")) bad("module.free", "missing");
    spec.module.rank = as_index(m["free"], "module.free");
    if (m.contains("relations"))
      spec.module.relations = as_vec_list(m["relations"], "module.relations");
  }
  if (j.contains("submodules")) {
    const auto& s = j["submodules"];
    if (!s.is_object()) bad("submodules", "expected an object of named generator lists");
    for (const auto& [name, gens] : s.items())
      spec.submodules.push_back({name, as_vec_list(gens, "submodules." + name)});
  }
  if (j.contains("multset")) {
    Vec v = as_vec(j["multset"], "multset");
    spec.multset = v;
  }
  if (j.contains("ideal")) {
    Vec v = as_vec(j["ideal"], "ideal");
    spec.ideal = v;
  }

  // Range checks need the ring order; products and polyquo are cheap to build.
  const auto order = build_ring(spec.ring)->order();
  check_vectors(spec.module.relations, spec.module.rank, order, "module.relations");
  for (const auto& s : spec.submodules)
    check_vectors(s.generators, spec.module.rank, order, "submodules." + s.name);
  if (spec.multset) check_elems(*spec.multset, order, "multset");
  if (spec.ideal) check_elems(*spec.ideal, order, "ideal");
  return spec;
}

InstanceSpec parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("instance: ") + e.what());
  }
  return parse_instance(j);
}

std::string render_instance(const InstanceSpec& spec) {
  return to_json(spec).dump(2) + "\n";
}

Instance resolve_instance(const InstanceSpec& spec, const Budget& budget) {
  Instance inst;
  inst.spec = spec;
  inst.ring = build_ring(spec.ring);
  inst.module = build_module(inst.ring, spec.module, budget);
  for (const auto& s : spec.submodules) {
    std::vector<ElemId> gens;
    for (const auto& v : s.generators) gens.push_back(inst.module->reduce(v));
    inst.submodules.emplace_back(s.name, submodule_generate(inst.module, gens));
  }
  if (spec.multset) inst.multset = saturate(inst.ring, *spec.multset);
  if (spec.ideal) inst.ideal = ideal_generate(inst.ring, *spec.ideal);
  return inst;
}

}  // namespace spm

// spm: command-line front end for the strongly prime submodule library.
//
//   spm <command> --instance <file> [--json <out>] [--max-module-order N]
//       [--max-submodules N] [--seed N]
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input or
// rejected precondition, 3 budget exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "spm/errors.hpp"
#include "spm/verify.hpp"

using namespace spm;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;

const std::vector<std::string> kClaims = {
    "all",         "ring-axioms",    "prop-1.1",
    "ex-1.2",      "prop-1.3",       "thm-1.5",
    "cor-1.6",     "thm-1.7",        "thm-2.3",
    "antichain",   "sspec-eq-max",   "sp-implies-ssp",
    "prime-implies-semiprime",       "srad-extensive",
    "srad-idempotent",               "max-ring-shadow",
    "loc-postconditions"};

struct Options {
  std::string command;
  std::vector<std::string> args;
  std::string instance_path;
  std::string json_path;
  std::string exploratory_path;
  std::string submodule;
  std::string element;
  std::size_t max_module_order = Budget{}.max_module_order;
  std::size_t max_submodules = Budget{}.max_submodules;
  std::uint64_t seed = CorpusConfig{}.seed;
  bool serial = false;
  std::string fault;

  Budget budget() const {
    Budget b;
    b.max_module_order = max_module_order;
    b.max_submodules = max_submodules;
    return b;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("instance: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string ring_set(const FiniteRing& r, const std::vector<Elem>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += r.name(xs[i]);
  }
  return out + "}";
}

json sub_json(const Submodule& s) {
  json gens = json::array();
  for (auto g : s.generators()) gens.push_back(s.module().vector_of(g));
  return {{"generators", gens}, {"order", s.size()}};
}

/// Output of a non-verify command: the table plus a single report entry.
struct Result {
  std::ostringstream table;
  std::string claim;
  std::string instance;
  json payload;
  int exit_code = kOk;
  std::vector<VerificationReport> reports;
};

class Session {
 public:
  explicit Session(const Options& opt) : opt_(opt) {
    if (opt.instance_path.empty()) throw InvalidInput("--instance is required for " + opt.command);
    inst_ = resolve_instance(parse_instance(read_file(opt.instance_path)), opt.budget());
  }

  const Instance& instance() const { return inst_; }
  const FinModule& module() const { return *inst_.module; }
  std::string descriptor() const { return "M=" + module().label(); }

  Submodule selected() const {
    if (!opt_.submodule.empty()) {
      for (const auto& [name, sub] : inst_.submodules)
        if (name == opt_.submodule) return sub;
      throw InvalidInput("--submodule: no submodule named '" + opt_.submodule + "'");
    }
    if (!inst_.submodules.empty()) return inst_.submodules.front().second;
    return zero_submodule(inst_.module);
  }

  std::string selected_name() const {
    if (!opt_.submodule.empty()) return opt_.submodule;
    if (!inst_.submodules.empty()) return inst_.submodules.front().first;
    return "0";
  }

  ElemId element() const {
    json j;
    try {
      j = json::parse(opt_.element);
    } catch (const json::exception&) {
      throw InvalidInput("--element: expected a JSON array such as [1,0]");
    }
    if (!j.is_array()) throw InvalidInput("--element: expected a JSON array such as [1,0]");
    Vec v;
    for (const auto& c : j) {
      if (!c.is_number_unsigned()) throw InvalidInput("--element: entries must be ring indices");
      v.push_back(c.get<Elem>());
    }
    try {
      return inst_.module->reduce(v);
    } catch (const InvalidInput& e) {
      throw InvalidInput(std::string("--element: ") + e.what());
    }
  }

  const SSpecPoset& spec() {
    if (!spec_) spec_ = s_spec(inst_.module, opt_.budget(), exec());
    return *spec_;
  }

  Exec exec() const { return opt_.serial ? Exec::Serial : Exec::Parallel; }

 private:
  const Options& opt_;
  Instance inst_;
  std::optional<SSpecPoset> spec_;
};

void print_submodule_row(std::ostream& os, const Submodule& s) {
  os << "  " << std::left << std::setw(28) << describe(s) << " order " << s.size() << "\n";
}

void cmd_colon(Session& s, const Options& opt, Result& r) {
  const auto n = s.selected();
  const auto& ring = s.module().ring();
  r.table << "module  " << s.module().label() << "\n";
  r.table << "N       " << describe(n) << "  (" << s.selected_name() << ", order " << n.size() << ")\n";
  r.instance = s.descriptor() + "; N=" + describe(n);
  if (opt.element.empty()) {
    const auto c = colon(n);
    r.table << "(N:M)   " << ring_set(ring, c.element_list()) << "\n";
    r.payload = {{"colon", c.element_list()}};
  } else {
    const auto x = s.element();
    const auto c = colon_cyclic(n, x);
    r.table << "x       " << s.module().element_name(x) << "\n";
    r.table << "I_x     " << ring_set(ring, c.element_list()) << "\n";
    r.instance += "; x=" + s.module().element_name(x);
    r.payload = {{"x", s.module().vector_of(x)}, {"colon", c.element_list()}};
  }
}

void cmd_sspec(Session& s, const Options&, Result& r) {
  const auto& spec = s.spec();
  r.table << "S-Spec(" << s.module().label() << "): " << spec.nodes.size()
          << " strongly prime submodules, " << spec.edges.size() << " containments\n";
  json nodes = json::array();
  for (const auto& p : spec.nodes) {
    print_submodule_row(r.table, p);
    nodes.push_back(sub_json(p));
  }
  r.instance = s.descriptor();
  r.payload = {{"strongly_prime", nodes}, {"containments", spec.edges.size()}};
}

void cmd_srad(Session& s, const Options&, Result& r) {
  const auto n = s.selected();
  const auto rad = s_rad(n, s.spec());
  r.table << "N         " << describe(n) << "  order " << n.size() << "\n";
  r.table << "s-rad(N)  " << describe(rad) << "  order " << rad.size();
  if (!rad.is_proper()) r.table << "  (no strongly prime submodule contains N)";
  r.table << "\n";
  r.instance = s.descriptor() + "; N=" + describe(n);
  r.payload = {{"s_rad", sub_json(rad)}, {"whole_module", !rad.is_proper()}};
}

void cmd_sht(Session& s, const Options&, Result& r) {
  const auto n = s.selected();
  const auto& spec = s.spec();
  const auto mins = strongly_minimal_primes(n, spec);
  const auto h = s_ht(n, spec);
  r.table << "N         " << describe(n) << "  order " << n.size() << "\n";
  r.table << "minimal strongly primes over N: " << mins.size() << "\n";
  for (const auto& p : mins) print_submodule_row(r.table, p);
  if (h.value)
    r.table << "s-ht(N)   " << *h.value << "\n";
  else
    r.table << "s-ht(N)   undefined (no strongly prime submodule contains N)\n";
  r.instance = s.descriptor() + "; N=" + describe(n);
  r.payload = {{"s_ht", h.value ? json(*h.value) : json()}, {"minimal_primes", mins.size()}};
}

template <class V, class F>
void predicate(Session& s, Result& r, const char* name, const V& verdict, F witness_text) {
  const auto n = s.selected();
  r.table << name << "(" << describe(n) << ") = " << (verdict.holds ? "true" : "false") << "\n";
  r.instance = s.descriptor() + "; N=" + describe(n);
  r.payload = {{"holds", verdict.holds}};
  if (verdict.witness) {
    auto [text, j] = witness_text(*verdict.witness);
    r.table << "witness: " << text << "\n";
    r.payload["witness"] = j;
  }
}

void cmd_predicate(Session& s, const Options&, Result& r) {
  const auto n = s.selected();
  const auto& m = s.module();
  const auto scalar = [&](const ScalarWitness& w) {
    return std::pair{"r=" + m.ring().name(w.r) + ", x=" + m.element_name(w.x),
                     json{{"r", w.r}, {"x", m.vector_of(w.x)}}};
  };
  if (r.claim == "is-prime") {
    predicate(s, r, "is-prime", is_prime(n), scalar);
  } else if (r.claim == "is-semiprime") {
    predicate(s, r, "is-semiprime", is_semiprime(n), scalar);
  } else if (r.claim == "is-strongly-prime") {
    predicate(s, r, "is-strongly-prime", is_strongly_prime(n, s.exec()),
              [&](const PairWitness& w) {
                return std::pair{"x=" + m.element_name(w.x) + ", y=" + m.element_name(w.y),
                                 json{{"x", m.vector_of(w.x)}, {"y", m.vector_of(w.y)}}};
              });
  } else {
    predicate(s, r, "is-strongly-semiprime", is_strongly_semiprime(n, s.exec()),
              [&](ElemId x) {
                return std::pair{"x=" + m.element_name(x), json{{"x", m.vector_of(x)}}};
              });
  }
}

void cmd_localize(Session& s, const Options&, Result& r) {
  const auto& inst = s.instance();
  if (!inst.multset) throw PreconditionError("localize: the instance has no multset");
  const auto& u = *inst.multset;
  const auto& ring = s.module().ring();
  const auto loc = localize_module(inst.module, u);
  r.instance = s.descriptor() + "; U=" + ring_set(ring, u.element_list());
  r.table << "U        " << ring_set(ring, u.element_list()) << "\n";
  r.table << "K        " << ring_set(ring, loc.ring.kernel.element_list()) << "\n";
  r.table << "T        " << describe(loc.torsion) << "  order " << loc.torsion.size() << "\n";
  r.payload = {{"kernel", loc.ring.kernel.element_list()}, {"torsion", sub_json(loc.torsion)}};
  if (loc.degenerate) {
    r.table << "U contains 0: U^-1 R and U^-1 M are zero\n";
    r.payload["degenerate"] = true;
    return;
  }
  r.table << "U^-1 R   " << loc.ring.map.target->label() << "  order "
          << loc.ring.map.target->order() << "\n";
  r.table << "U^-1 M   " << loc.module->label() << "  order " << loc.module->order() << "\n";
  r.payload["degenerate"] = false;
  r.payload["ring_order"] = loc.ring.map.target->order();
  r.payload["module_order"] = loc.module->order();
  if (!inst.submodules.empty()) {
    const auto n = s.selected();
    const auto img = image_submodule(n, loc);
    r.table << "U^-1 N   " << describe(img) << "  order " << img.size() << "\n";
    r.payload["image"] = sub_json(img);
  }
}

void cmd_flat(Session& s, const Options&, Result& r) {
  const auto cert = is_flat(s.instance().module);
  const auto& ring = s.module().ring();
  r.instance = s.descriptor();
  r.table << "flat: " << (cert.flat ? "true" : "false") << "\n";
  json locals = json::array();
  for (const auto& l : cert.locals) {
    if (!l.complement_closed) {
      r.table << "  m=" << ring_set(ring, l.maximal.element_list())
              << "  complement not multiplicatively closed, not certified\n";
      locals.push_back({{"maximal", l.maximal.element_list()}, {"complement_closed", false}});
      continue;
    }
    r.table << "  m=" << ring_set(ring, l.maximal.element_list()) << "  residue dim "
            << l.residue_dim << "  |M_m|=" << l.local_module_order << "  |R_m|="
            << l.local_ring_order << "  " << (l.free ? "free" : "not free") << "\n";
    locals.push_back({{"maximal", l.maximal.element_list()},
                      {"residue_dim", l.residue_dim},
                      {"local_module_order", l.local_module_order},
                      {"local_ring_order", l.local_ring_order},
                      {"free", l.free}});
  }
  r.payload = {{"flat", cert.flat}, {"locals", locals}};
}

void cmd_ring_info(Session& s, const Options&, Result& r) {
  const auto& rp = s.instance().ring;
  const auto& ring = *rp;
  r.instance = "R=" + ring.label();
  r.table << "ring    " << ring.label() << "\n";
  r.table << "order   " << ring.order() << "\n";
  r.table << "index   name\n";
  for (Elem a = 0; a < ring.order(); ++a)
    r.table << "  " << std::left << std::setw(6) << a << ring.name(a) << "\n";
  std::vector<Elem> units;
  for (Elem a = 0; a < ring.order(); ++a)
    if (ring.is_unit(a)) units.push_back(a);
  r.table << "units   " << ring_set(ring, units) << "\n";
  const auto ideals = enumerate_ideals(rp);
  json maximal = json::array(), prime = json::array();
  r.table << "ideals  " << ideals.size() << "\n";
  for (const auto& i : maximal_ideals(rp)) {
    r.table << "  maximal " << ring_set(ring, i.element_list()) << "\n";
    maximal.push_back(i.element_list());
  }
  for (const auto& i : ideals)
    if (is_prime_ideal(i)) prime.push_back(i.element_list());
  json names = json::array();
  for (Elem a = 0; a < ring.order(); ++a) names.push_back(ring.name(a));
  r.payload = {{"order", ring.order()}, {"names", names}, {"units", units},
               {"ideals", ideals.size()}, {"maximal", maximal}, {"prime", prime}};
}

/// The standard predicates, or a deliberately broken set for exercising the
/// failure path end to end.
PredicateSet predicates(const Options& opt) {
  auto preds = PredicateSet::standard();
  if (opt.fault == "strongly-prime")
    preds.strongly_prime = [](const Submodule&) { return PairVerdict{}; };
  else if (!opt.fault.empty())
    throw InvalidInput("--inject-fault: unknown fault '" + opt.fault + "'");
  return preds;
}

bool wants(const std::string& claim, const std::string& requested) {
  return requested == "all" || claim.rfind(requested, 0) == 0 ||
         requested.rfind(claim, 0) == 0;
}

/// verify against the instance file only.
RunBundle verify_instance(Session& s, const Options& opt, const std::string& claim) {
  const auto& inst = s.instance();
  const auto preds = predicates(opt);
  const auto budget = opt.budget();
  RunBundle bundle;
  auto keep = [&](std::vector<VerificationReport> rs) {
    for (auto& r : rs)
      if (wants(r.claim, claim)) bundle.reports.push_back(std::move(r));
  };

  if (wants("ring-axioms", claim)) {
    const auto v = validate_ring(*inst.ring);
    json w;
    if (!v.ok()) w = {{"axiom", v.violations.front().axiom}};
    bundle.reports.push_back({"ring-axioms", "R=" + inst.ring->label(), v.ok() ? "pass" : "fail", w, 0});
  }
  if (wants("ex-1.2", claim)) {
    if (inst.ideal) {
      bundle.reports.push_back(verify_example_1_2(*inst.ideal, preds));
    } else {
      for (const auto& p : enumerate_ideals(inst.ring))
        if (is_prime_ideal(p)) bundle.reports.push_back(verify_example_1_2(p, preds));
    }
  }
  if (wants("prop-1.3", claim)) {
    bool field = true;
    for (Elem a = 0; a < inst.ring->order(); ++a)
      field = field && (a == inst.ring->zero() || inst.ring->is_unit(a));
    if (field)
      bundle.reports.push_back(verify_prop_1_3(inst.spec.ring, inst.spec.module.rank, budget));
    else if (claim != "all")
      throw PreconditionError("prop-1.3: " + inst.ring->label() + " is not a field");
  }

  static const std::vector<std::string> module_claims = {
      "prop-1.1",       "thm-1.5",         "cor-1.6",         "thm-1.7",
      "thm-2.3",        "antichain",       "sspec-eq-max",    "sp-implies-ssp",
      "prime-implies-semiprime",           "srad-extensive",  "srad-idempotent",
      "max-ring-shadow", "loc-postconditions"};
  const bool any = std::any_of(module_claims.begin(), module_claims.end(),
                               [&](const std::string& c) { return wants(c, claim); });
  if (any) {
    const auto& m = inst.module;
    std::vector<MultSet> mults;
    if (inst.multset) mults.push_back(*inst.multset);
    else mults = canonical_multsets(inst.ring);
    if (wants("loc-postconditions", claim))
      for (const auto& u : mults) {
        bundle.reports.push_back(verify_ring_localization(u));
        bundle.reports.push_back(verify_localization(m, u));
      }
    json ij = {{"ring", to_json(inst.spec.ring)}, {"module", to_json(inst.spec.module)}};
    const auto a = analyze_module(m, ij, s.descriptor(), budget, preds, s.exec());
    keep(verify_prop_1_1(a, preds));
    keep(verify_antichain(a));
    if (wants("thm-1.7", claim)) bundle.reports.push_back(verify_thm_1_7(a, preds));
    keep(verify_derived(a, preds, &bundle.exploratory));
    if (wants("thm-2.3", claim)) {
      std::vector<std::pair<std::string, Submodule>> proper;
      for (const auto& ns : inst.submodules)
        if (ns.second.is_proper()) proper.push_back(ns);
      if (proper.empty()) {
        CorpusConfig cc;
        cc.budget = budget;
        keep(verify_thm_2_3_enumerated(a, cc, opt.seed, preds));
      } else {
        for (const auto& [name, n] : proper) keep(verify_thm_2_3(a, n.generators(), budget, preds));
      }
    }
    if (wants("thm-1.5", claim) || wants("cor-1.6", claim))
      for (const auto& u : mults) keep(verify_thm_1_5(a, u, budget, preds));
  }
  finalize(bundle);
  return bundle;
}

RunBundle verify_corpus(const Options& opt, const std::string& claim) {
  RunConfig rc;
  rc.corpus.budget = opt.budget();
  rc.corpus.seed = opt.seed;
  rc.exec = opt.serial ? Exec::Serial : Exec::Parallel;
  rc.predicates = predicates(opt);
  if (claim != "all") rc.claims = {claim};
  return run_all(rc);
}

void print_bundle(std::ostream& os, const RunBundle& b, bool per_report) {
  if (per_report) {
    std::size_t w = 5;
    for (const auto& r : b.reports) w = std::max(w, r.claim.size());
    os << std::left << std::setw(static_cast<int>(w)) << "claim" << "  "
       << std::setw(22) << "verdict" << "instance\n";
    for (const auto& r : b.reports) {
      os << std::setw(static_cast<int>(w)) << r.claim << "  " << std::setw(22) << r.verdict
         << r.instance << "\n";
      if (r.failed()) os << "    witness: " << r.witness.dump() << "\n";
    }
  } else {
    std::map<std::string, std::array<std::size_t, 3>> counts;
    for (const auto& r : b.reports) {
      auto& c = counts[r.claim];
      ++c[r.passed() ? 0 : r.failed() ? 1 : 2];
    }
    std::size_t w = 5;
    for (const auto& [k, v] : counts) w = std::max(w, k.size());
    os << std::left << std::setw(static_cast<int>(w)) << "claim" << "  " << std::right
       << std::setw(8) << "pass" << std::setw(8) << "fail" << std::setw(8) << "skip" << "\n";
    for (const auto& [k, v] : counts)
      os << std::left << std::setw(static_cast<int>(w)) << k << "  " << std::right
         << std::setw(8) << v[0] << std::setw(8) << v[1] << std::setw(8) << v[2] << "\n";
    for (const auto& r : b.reports)
      if (r.failed())
        os << "FAIL " << r.claim << "  " << r.instance << "\n    witness: " << r.witness.dump()
           << "\n";
  }
  os << "passed " << b.passed << ", failed " << b.failed << ", skipped " << b.skipped << "\n";
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("--json: cannot write " + path);
  out << j.dump(2) << "\n";
}

int run(const Options& opt) {
  if (opt.command == "verify") {
    if (opt.args.size() != 1) throw InvalidInput("verify: expected one claim id or 'all'");
    const auto& claim = opt.args.front();
    const bool known = std::any_of(kClaims.begin(), kClaims.end(), [&](const std::string& c) {
      return claim == c || (c != "all" && (claim.rfind(c, 0) == 0 || c.rfind(claim, 0) == 0));
    });
    if (!known) throw InvalidInput("verify: unknown claim id '" + claim + "'");
    RunBundle bundle;
    if (opt.instance_path.empty()) {
      bundle = verify_corpus(opt, claim);
      print_bundle(std::cout, bundle, false);
    } else {
      Session s(opt);
      bundle = verify_instance(s, opt, claim);
      print_bundle(std::cout, bundle, true);
    }
    if (!opt.json_path.empty()) write_json(opt.json_path, to_json(bundle.reports));
    if (!opt.exploratory_path.empty()) write_json(opt.exploratory_path, json(bundle.exploratory));
    return bundle.exit_code() == 0 ? kOk : kVerificationFailed;
  }

  using Handler = void (*)(Session&, const Options&, Result&);
  static const std::map<std::string, Handler> handlers = {
      {"colon", cmd_colon},
      {"sspec", cmd_sspec},
      {"srad", cmd_srad},
      {"sht", cmd_sht},
      {"is-prime", cmd_predicate},
      {"is-semiprime", cmd_predicate},
      {"is-strongly-prime", cmd_predicate},
      {"is-strongly-semiprime", cmd_predicate},
      {"localize", cmd_localize},
      {"is-flat", cmd_flat},
      {"ring-info", cmd_ring_info},
  };
  std::string command = opt.command;
  if (command == "ring") {
    if (opt.args != std::vector<std::string>{"info"})
      throw InvalidInput("ring: the only subcommand is 'info'");
    command = "ring-info";
  } else if (!opt.args.empty()) {
    throw InvalidInput(command + ": unexpected argument '" + opt.args.front() + "'");
  }
  const auto it = handlers.find(command);
  if (it == handlers.end()) throw InvalidInput("unknown command '" + opt.command + "'");

  Session s(opt);
  Result r;
  r.claim = command;
  const auto start = std::chrono::steady_clock::now();
  it->second(s, opt, r);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::cout << r.table.str();
  if (!opt.json_path.empty())
    write_json(opt.json_path, to_json(std::vector<VerificationReport>{
                                  {r.claim, r.instance, "pass", r.payload, ms}}));
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strongly prime submodules of finite modules over finite commutative rings"};
  Options opt;
  app.add_option("command", opt.command,
                 "colon, sspec, srad, sht, is-prime, is-strongly-prime, is-semiprime, "
                 "is-strongly-semiprime, localize, is-flat, ring-info (or 'ring info'), verify")
      ->required();
  app.add_option("args", opt.args, "claim id for verify ('all' for every claim)");
  app.add_option("--instance", opt.instance_path, "instance file (JSON)");
  app.add_option("--json", opt.json_path, "write the report array here");
  app.add_option("--exploratory", opt.exploratory_path,
                 "verify: write observations that are reported but not asserted");
  app.add_option("--submodule", opt.submodule, "named submodule of the instance (default: first)");
  app.add_option("--element", opt.element, "module element for colon, e.g. [1,0]");
  app.add_option("--max-module-order", opt.max_module_order, "budget: largest module order")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-submodules", opt.max_submodules, "budget: largest submodule lattice")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "seed for random generator lists");
  app.add_flag("--serial", opt.serial, "use the serial kernels");
  app.add_option("--inject-fault", opt.fault, "verify with a broken predicate (strongly-prime)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }
  set_default_exec(opt.serial ? Exec::Serial : Exec::Parallel);

  try {
    return run(opt);
  } catch (const BudgetExceeded& e) {
    std::cerr << "spm: " << e.what() << "\n";
    return kBudget;
  } catch (const InvalidInput& e) {
    std::cerr << "spm: invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const PreconditionError& e) {
    std::cerr << "spm: precondition: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "spm: internal error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "twistlab/assumptions.hpp"
#include "twistlab/error.hpp"
#include "twistlab/extensions.hpp"
#include "twistlab/hyperelliptic.hpp"
#include "twistlab/kummerq.hpp"
#include "twistlab/pairings.hpp"
#include "twistlab/symplectic.hpp"

namespace twistlab::cli {

using nlohmann::json;

namespace {

json header(const std::string& command) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::size_t parse_size(const std::string& key, const std::string& v) {
  try {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(v);
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size() || x == 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(x);
  } catch (const std::exception&) {
    throw PreconditionError("config key " + key + " needs a positive integer, got '" + v + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string bits_string(std::uint64_t v, unsigned width) {
  std::string s;
  for (unsigned i = 0; i < width; ++i) s += ((v >> i) & 1ULL) ? '1' : '0';
  return s;
}

/// The group, its module and the symplectic model, kept alive together.
struct Setup {
  std::unique_ptr<PermutationModel> model;
  std::shared_ptr<const PermutationLaw> law;
  std::unique_ptr<FiniteGroup> g;
  ModuleAction act;
  bool transitive = false;
};

Setup make_setup(const Config& cfg, const std::string& group, const std::string& module) {
  unsigned n = 0;
  if (module == "perm6") n = 6;
  if (module == "perm8") n = 8;
  if (n == 0) throw PreconditionError("unknown module '" + module + "' (expected perm6 or perm8)");
  Setup s;
  s.model = std::make_unique<PermutationModel>(n);
  auto law = std::make_shared<const PermutationLaw>(n);
  std::vector<Key> gens;
  if (trim(group).empty()) {
    gens = law->parse_list(n == 6 ? "(1 2),(1 2 3 4 5 6)" : "(1 2),(1 2 3 4 5 6 7 8)");
  } else {
    try {
      gens = law->parse_list(group);
    } catch (const ContractError& e) {
      throw PreconditionError(std::string("bad generator list: ") + e.what());
    }
  }
  s.transitive = is_transitive(*law, gens);
  s.g = std::make_unique<FiniteGroup>(FiniteGroup::enumerate(law, gens, cfg.group_cap));
  s.law = law;
  s.act = s.model->action(*s.g);
  return s;
}

json report_json(const AssumptionReport& r, unsigned h1_width) {
  json j;
  j["order"] = r.order;
  j["generators"] = r.generators_text;
  j["fingerprint"] = r.fp.to_string();
  j["transitive"] = r.transitive;
  j["h1Dim"] = r.h1_dim;
  j["cClass"] = bits_string(r.c_class, h1_width);
  j["cNonzero"] = r.c_nonzero();
  j["A"] = r.A;
  j["B"] = r.B;
  j["C"] = r.C;
  j["assumption1"] = r.assumption1();
  j["hs16"] = r.hs16;
  j["hs16Raw"] = r.hs16_raw;
  j["witnessB"] = r.witness_b ? json(r.witness_b_text) : json(nullptr);
  json inter = json::array();
  for (std::uint64_t v : r.intersection_basis) inter.push_back(bits_string(v, h1_width));
  j["intersectionBasis"] = inter;
  return j;
}

Cocycle1 pick_cocycle(const std::string& choice, const Setup& s, const H1Result& h) {
  if (choice == "zero") return zero_cocycle(*s.g);
  if (choice == "w") return w_cocycle(*s.g, *s.model, 1);
  if (choice == "c") return c_cocycle(*s.g, s.act, s.model->space(), refinements(s.model->space()).front());
  if (choice.rfind("h1:", 0) == 0) {
    std::size_t k = 0;
    try {
      std::size_t pos = 0;
      k = std::stoul(choice.substr(3), &pos);
      if (pos != choice.size() - 3) throw std::invalid_argument(choice);
    } catch (const std::exception&) {
      throw PreconditionError("bad cocycle '" + choice + "' (expected h1:K)");
    }
    if (k >= h.h1_basis.size())
      throw PreconditionError("h1 index " + std::to_string(k) + " out of range (dim " + std::to_string(h.dim()) + ")");
    return h.h1_basis[k];
  }
  throw PreconditionError("unknown cocycle '" + choice + "' (expected zero, w, c or h1:K)");
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const Rational& q : v) a.push_back(to_string(q));
  return a;
}

json poly_json(const Poly& f) {
  std::vector<Rational> c = f.coeffs();
  return rationals(c);
}

Poly parse_integral_sextic(const std::string& text) {
  const Poly f = Poly::parse(text);
  if (f.degree() != 6) throw PreconditionError("f must have degree 6");
  if (!f.is_integral()) throw PreconditionError("f must have integer coefficients");
  return f;
}

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

void set_config_value(Config& cfg, const std::string& key, const std::string& value) {
  if (key == "group_cap") cfg.group_cap = parse_size(key, value);
  else if (key == "subgroup_cap") cfg.subgroup_cap = parse_size(key, value);
  else if (key == "gamma_cap") cfg.gamma_cap = parse_size(key, value);
  else if (key == "e_cap") cfg.e_cap = parse_size(key, value);
  else if (key == "assoc_samples") cfg.assoc_samples = parse_size(key, value);
  else if (key == "prime_budget") cfg.prime_budget = static_cast<unsigned>(parse_size(key, value));
  else if (key == "trial_bound") cfg.trial_bound = static_cast<unsigned>(parse_size(key, value));
  else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_size(key, value));
  else if (key == "format") {
    if (value != "json" && value != "text") throw PreconditionError("format must be json or text");
    cfg.format = value;
  } else {
    throw PreconditionError("unknown config key '" + key + "'");
  }
}

Config load_config(const std::string& path) {
  Config cfg;
  if (const char* env = std::getenv("TWISTLAB_THREADS"); env != nullptr && *env != '\0')
    set_config_value(cfg, "threads", env);
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file " + path);
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw PreconditionError(path + ":" + std::to_string(lineno) + ": expected key=value");
    set_config_value(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

json survey_s6(const Config& cfg, bool assumption1_only) {
  const auto rows = twistlab::survey_s6(cfg.subgroup_cap);
  json out = header("survey-s6");
  json list = json::array();
  std::size_t a1 = 0, a1_c = 0, hs = 0, hs_trans = 0;
  json c_orders = json::array();
  for (const AssumptionReport& r : rows) {
    if (r.assumption1()) {
      ++a1;
      if (r.c_nonzero()) {
        ++a1_c;
        c_orders.push_back(r.order);
      }
    }
    if (r.hs16) {
      ++hs;
      hs_trans += r.transitive;
    }
    if (!assumption1_only || r.assumption1()) list.push_back(report_json(r, r.h1_dim));
  }
  out["rows"] = list;
  out["summary"] = {{"classes", rows.size()},
                    {"assumption1", a1},
                    {"assumption1CNonzero", a1_c},
                    {"assumption1CNonzeroOrders", c_orders},
                    {"hs16", hs},
                    {"hs16Transitive", hs_trans}};
  return out;
}

json h1(const Config& cfg, const std::string& group, const std::string& module) {
  const Setup s = make_setup(cfg, group, module);
  const H1Result h = twistlab::h1(*s.g, s.act);
  json out = header("h1");
  out["module"] = module;
  out["order"] = s.g->order();
  out["dim"] = h.dim();
  out["dimZ1"] = h.dim_z1();
  out["dimB1"] = h.dim_b1();
  const std::uint64_t c = class_of_c(h, *s.g, s.act, s.model->space());
  const std::uint64_t w = h.class_coords(w_cocycle(*s.g, *s.model, 1));
  out["cClass"] = bits_string(c, h.dim());
  out["wClass"] = bits_string(w, h.dim());
  out["cEqualsW"] = c == w;
  return out;
}

json assumptions(const Config& cfg, const std::string& group, const std::string& module) {
  const Setup s = make_setup(cfg, group, module);
  const AssumptionReport r = assess(*s.g, s.act, s.model->space(), s.transitive);
  json out = header("assumptions");
  out["module"] = module;
  out["report"] = report_json(r, r.h1_dim);
  return out;
}

json extension_lab(const Config& cfg, const std::string& group, unsigned n, unsigned m, const std::string& control) {
  const Setup s = make_setup(cfg, group, "perm6");
  if (n == 0) throw PreconditionError("n must be at least 1");
  const H1Result h = twistlab::h1(*s.g, s.act);
  // Inflated classes: [w] first, then H1 basis vectors independent of it.
  std::vector<Cocycle1> pool;
  const Cocycle1 w = w_cocycle(*s.g, *s.model, 1);
  Echelon64 span;
  if (span.insert(h.class_coords(w))) pool.push_back(w);
  for (const Cocycle1& b : h.h1_basis)
    if (span.insert(h.class_coords(b))) pool.push_back(b);
  if (m > pool.size())
    throw PreconditionError("m = " + std::to_string(m) + " exceeds dim H1 = " + std::to_string(pool.size()));
  pool.resize(m);

  const SemidirectGamma gm(*s.g, s.act, n, cfg.gamma_cap);
  EtaOverride ov;
  if (control == "split") {
    ov.zero = true;
  } else if (control == "corrupt") {
    ov.x = gm.pack(3, static_cast<Index>(7 % s.g->order()));
    ov.y = gm.pack(5, static_cast<Index>(11 % s.g->order()));
    ov.flip = 1;
  } else if (control != "none") {
    throw PreconditionError("control must be none, split or corrupt");
  }
  const CentralExtE e(gm, s.model->space().gram(), pool, cfg.e_cap, ov);
  if (control == "corrupt" && e.num_components() == 0) throw PreconditionError("corrupt control needs |S| >= 1");

  json out = header("extension-lab");
  out["n"] = n;
  out["m"] = m;
  out["control"] = control;
  out["baseOrder"] = s.g->order();
  out["gammaOrder"] = gm.order();
  out["order"] = e.order();
  json comps = json::array();
  for (const EtaComponent& c : e.components()) comps.push_back({c.i, c.j});
  out["components"] = comps;
  const AssocReport as = check_associativity(e, 50000, cfg.assoc_samples);
  out["associativity"] = {{"associative", as.associative}, {"exhaustive", as.exhaustive}, {"checks", as.checks}};
  if (!as.associative) {
    out["kernelCentral"] = nullptr;
    out["characters"] = nullptr;
    return out;
  }
  out["kernelCentral"] = check_kernel_central(e);
  out["gammaCoboundaries"] = check_gamma_coboundaries(e);
  const HomsFactorReport hf = homs_factor_check(e);
  out["characters"] = {{"count", hf.num_characters}, {"factorThroughG", hf.factors}};
  const ConjugacyClasses cc = conjugacy_classes(*s.g);
  json pats = json::array();
  bool all_full = true;
  const std::size_t full = std::size_t{1} << e.num_components();
  for (std::size_t c = 0; c < cc.count(); ++c) {
    const Index g = cc.rep(c);
    if (s.act.matrix(g).fixed_dim() != 0) continue;
    const auto p = realized_sign_patterns(e, g);
    json counts = json::object();
    for (const auto& [mask, count] : p) counts[bits_string(mask, e.num_components())] = count;
    const bool is_full = p.size() == full;
    all_full = all_full && is_full;
    pats.push_back({{"element", s.g->format(g)}, {"patterns", counts}, {"full", is_full}});
  }
  out["signPatterns"] = pats;
  out["signPatternsFull"] = all_full;
  return out;
}

json psi(const Config& cfg, const std::string& group, const std::string& module, const std::string& a_choice,
         const std::string& b_choice) {
  Setup s = make_setup(cfg, group, module);
  if (s.g->order() <= 4096) s.g->build_table();
  const H1Result h = twistlab::h1(*s.g, s.act);
  const Cocycle1 a = pick_cocycle(a_choice, s, h);
  const Cocycle1 b = pick_cocycle(b_choice, s, h);
  const SmallMat& gram = s.model->space().gram();
  const auto gamma = coboundary_solve(*s.g, cup_mu2(*s.g, s.act, gram, a, b), false);
  if (!gamma) throw PreconditionError("the cup product of a and b is not a coboundary; psi is undefined");
  const PsiTable table = psi_table(*s.g, s.act, gram, a, b, *gamma);
  const ConjugacyClasses cc = conjugacy_classes(*s.g);
  json out = header("psi");
  out["module"] = module;
  out["a"] = a_choice;
  out["b"] = b_choice;
  out["order"] = s.g->order();
  bool invariant = true;
  bool agree = true;
  std::size_t defined = 0;
  for (Index x = 0; x < s.g->order(); ++x) {
    if (!table.defined(x)) continue;
    ++defined;
    invariant = invariant && table.at(x) == table.at(cc.rep(cc.class_of[x]));
    const SplittingCheck sc = twisted_splitting_check(*s.g, s.act, gram, a, b, *gamma, x);
    agree = agree && sc.module_ok && sc.cocycle_ok && sc.retractions == 1 && sc.value == table.at(x);
  }
  json classes = json::array();
  for (std::size_t c = 0; c < cc.count(); ++c) {
    const Index r = cc.rep(c);
    if (!table.defined(r)) continue;
    classes.push_back({{"element", s.g->format(r)}, {"size", cc.classes[c].size()}, {"psi", table.at(r) ? 1 : 0}});
  }
  out["classes"] = classes;
  out["definedElements"] = defined;
  out["conjugationInvariant"] = invariant;
  out["agreesWithSplitting"] = agree;
  return out;
}

json admissible(unsigned dim, std::uint32_t c, unsigned parity, std::uint32_t a) {
  if (parity > 1) throw PreconditionError("parity must be 0 or 1");
  if (dim == 0 || dim > kMaxPairingDim) throw PreconditionError("dim must be in 1..10");
  const RadicalSearch s = exists_with_radical(dim, c, parity == 1, a);
  json out = header("admissible");
  out["dim"] = dim;
  out["c"] = bits_string(c, dim);
  out["target"] = bits_string(a, dim);
  out["parity"] = parity;
  out["feasible"] = s.pairing.has_value();
  if (s.pairing) {
    json rows = json::array();
    for (std::uint32_t r : s.pairing->gram) rows.push_back(bits_string(r, dim));
    out["gram"] = rows;
    json rad = json::array();
    for (std::uint32_t v : radical_elements(*s.pairing)) rad.push_back(bits_string(v, dim));
    out["radical"] = rad;
    out["reason"] = nullptr;
  } else {
    out["gram"] = nullptr;
    out["radical"] = nullptr;
    out["reason"] = s.reason;
  }
  return out;
}

json kummer(const std::string& f_text, const std::string& lambda_text, bool allow_nonsquare) {
  const Poly f = Poly::parse(f_text);
  if (f.degree() != 6) throw PreconditionError("f must have degree 6");
  const NumberField k(f);
  const Poly lp = Poly::parse(lambda_text);
  if (lp.degree() >= 6) throw PreconditionError("lambda needs at most 6 coordinates");
  const NFElement lambda = k.from_poly(lp);
  const bool sq = norm_is_square(k, lambda);
  if (!sq && !allow_nonsquare) throw PreconditionError("N(lambda) is not a rational square");
  const QuadricTriple q = trace_quadrics(k, lambda);
  json out = header("kummer");
  out["f"] = poly_json(f);
  out["lambda"] = rationals(lambda.c);
  out["norm"] = to_string(k.norm(lambda));
  out["normSquare"] = sq;
  json grams = json::array();
  for (const QMat& g : q.g) {
    json m = json::array();
    for (const auto& row : g) m.push_back(rationals(row));
    grams.push_back(m);
  }
  out["gram"] = grams;
  const auto e = euler_traces(k);
  bool ok = true;
  for (unsigned i = 0; i < 5; ++i) ok = ok && e[i] == 0;
  ok = ok && e[5] == 1 / f.lead();
  out["euler"] = {{"values", rationals(e)}, {"ok", ok}};
  return out;
}

json p0_search(const std::string& f_text, unsigned bound) {
  const Poly f = parse_integral_sextic(f_text);
  const PrimeConditionReport r = disc_and_p0(f, bound);
  json out = header("p0-search");
  out["f"] = poly_json(f);
  out["disc"] = r.disc.get_str();
  out["leading"] = r.leading.get_str();
  out["bound"] = bound;
  out["primes"] = r.primes;
  json fac = json::array();
  for (const auto& [p, e] : r.factored) fac.push_back({p, e});
  out["factored"] = fac;
  out["cofactor"] = r.cofactor.get_str();
  return out;
}

json galois_cert(const std::string& f_text, unsigned budget, unsigned threads) {
  const Poly f = parse_integral_sextic(f_text);
  const GaloisCertificate c = galois_s6_certificate(f, budget, threads);
  json out = header("galois-cert");
  out["f"] = poly_json(f);
  out["budget"] = budget;
  out["certified"] = c.certified();
  out["primesUsed"] = c.primes_used;
  auto opt = [](const std::optional<std::uint64_t>& p) { return p ? json(*p) : json(nullptr); };
  out["witnesses"] = {{"p6", opt(c.p6)}, {"p51", opt(c.p51)}, {"p2", opt(c.p2)}};
  json counts = json::array();
  for (const auto& [pat, n] : c.pattern_counts) counts.push_back({{"pattern", pat}, {"count", n}});
  out["patternCounts"] = counts;
  return out;
}

json selftest(const Config& cfg) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string err;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      err = e.what();
    }
    all = all && ok;
    json c = {{"name", name}, {"passed", ok}};
    if (!err.empty()) c["error"] = err;
    checks.push_back(c);
  };

  record("sp4 order by transvections matches the formula", [] {
    return generate_sp(SymplecticSpace::standard(2), 1000).order() == sp_order_formula(2);
  });
  record("Arf invariant by basis and by majority", [] {
    for (unsigned d = 1; d <= 3; ++d) {
      const SymplecticSpace sp = SymplecticSpace::standard(d);
      for (const auto& q : refinements(sp))
        if (arf(sp, q) != arf_by_majority(sp, q)) return false;
    }
    return true;
  });
  record("H1(S6, V4) has dimension 1 with [c] = [w] != 0", [&] {
    const Setup s = make_setup(cfg, "", "perm6");
    const H1Result h = twistlab::h1(*s.g, s.act);
    const Cocycle1 w = w_cocycle(*s.g, *s.model, 1);
    return h.dim() == 1 && is_cocycle_all_pairs(*s.g, s.act, w) &&
           class_of_c(h, *s.g, s.act, s.model->space()) == h.class_coords(w) && h.class_coords(w) != 0;
  });
  record("admissible pairing construction matches exhaustive search (n <= 3)", [] {
    for (unsigned n = 1; n <= 3; ++n)
      for (std::uint32_t c = 0; c < (1U << n); ++c)
        for (int r = 0; r < 2; ++r)
          for (std::uint32_t a = 1; a < (1U << n); ++a)
            if (exists_with_radical(n, c, r != 0, a).pairing.has_value() !=
                search_with_radical(n, c, r != 0, a).pairing.has_value())
              return false;
    return true;
  });
  record("Euclidean and Sylvester resultants agree", [] {
    const char* polys[] = {"[-1,-1,0,0,0,0,1]", "[7,0,0,0,0,-1,3]", "[1,2,3,4,5,6,7]", "[-20,24,0,0,0,0,1]"};
    for (const char* t : polys) {
      const Poly f = Poly::parse(t);
      if (resultant(f, f.derivative()) != sylvester_resultant(f, f.derivative())) return false;
    }
    return true;
  });
  record("Euler identities and the rational line for x^6 - x - 1", [] {
    const NumberField k(Poly::parse("[-1,-1,0,0,0,0,1]"));
    const auto e = euler_traces(k);
    for (unsigned i = 0; i < 5; ++i)
      if (e[i] != 0) return false;
    const QuadricTriple q = kummer_quadrics(k, k.one());
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b)
        if (evaluate_quadrics(q, k.from_coeffs({a, b})) != std::array<Rational, 3>{0, 0, 0}) return false;
    return e[5] == 1;
  });
  record("Galois certificate for x^6 - x - 1", [] {
    return galois_s6_certificate(Poly::parse("[-1,-1,0,0,0,0,1]"), 2000).certified();
  });
  record("no odd cycle types for a square discriminant", [] {
    const GaloisCertificate c = galois_s6_certificate(Poly::parse("[-20,24,0,0,0,0,1]"), 300);
    return !c.p2 && !c.p6;
  });
  record("S6 survey counts", [&] {
    const json s = survey_s6(cfg, false)["summary"];
    return s["assumption1"] == 9 && s["assumption1CNonzero"] == 3 && s["hs16"] == 4 && s["hs16Transitive"] == 2;
  });
  record("E for n = 1, m = 1 is associative and its characters factor", [&] {
    const json e = extension_lab(cfg, "", 1, 1, "none");
    return e["order"] == 23040 && e["associativity"]["associative"] == true &&
           e["characters"]["factorThroughG"] == true && e["signPatternsFull"] == true;
  });
  record("corrupted eta is caught", [&] {
    return extension_lab(cfg, "", 1, 1, "corrupt")["associativity"]["associative"] == false;
  });
  record("trivializing locus computed two ways", [&] {
    const Setup s = make_setup(cfg, "", "perm6");
    const SemidirectGamma gm(*s.g, s.act, 1, cfg.gamma_cap);
    const TrivializingLocus t = trivializing_locus(gm);
    return t.agree && t.characters_nonconstant;
  });

  json out = header("selftest");
  out["checks"] = checks;
  out["passed"] = all;
  return out;
}

std::string render_text(const json& doc) {
  std::ostringstream out;
  flatten(doc, "", out);
  return out.str();
}

}  // namespace twistlab::cli

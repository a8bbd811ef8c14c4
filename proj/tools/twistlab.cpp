// Command-line front end. JSON (or flattened text) on stdout, diagnostics on
// stderr. Exit codes: 0 success, 1 usage or internal error, 2 precondition
// failure, 3 enumeration cap exceeded.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "twistlab/error.hpp"

using twistlab::cli::Config;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"twistlab: F2 cohomology, extension and Kummer quadric computations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::string format;
  unsigned threads = 0;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", threads, "worker threads (overrides TWISTLAB_THREADS)");

  bool a1_only = false;
  auto* survey = app.add_subcommand("survey-s6", "assumption survey over subgroup classes of S6");
  survey->add_flag("--assumption1-only", a1_only, "list only classes satisfying Assumption 1");

  std::string group, module = "perm6";
  auto* h1 = app.add_subcommand("h1", "dim H1(G, V) and the classes of c and w");
  h1->add_option("--group", group, "generators, e.g. \"(1 2),(1 2 3 4 5 6)\"; default the full group");
  h1->add_option("--module", module, "perm6 or perm8");
  auto* assum = app.add_subcommand("assumptions", "conditions A, B, C and HS16 for one group");
  assum->add_option("--group", group, "generators");
  assum->add_option("--module", module, "perm6 or perm8");

  unsigned ext_n = 1, ext_m = 1;
  std::string control = "none";
  auto* ext = app.add_subcommand("extension-lab", "build Gamma and E over a subgroup of S6 and check them");
  ext->add_option("--group", group, "generators; default S6");
  ext->add_option("--n", ext_n, "copies of V");
  ext->add_option("--m", ext_m, "inflated classes");
  ext->add_option("--control", control, "none, split or corrupt")->check(CLI::IsMember({"none", "split", "corrupt"}));

  std::string psi_a = "w", psi_b = "zero";
  auto* psi = app.add_subcommand("psi", "psi_{a,b} on fixed-point-free classes");
  psi->add_option("--group", group, "generators");
  psi->add_option("--module", module, "perm6 or perm8");
  psi->add_option("--a", psi_a, "zero, w, c or h1:K");
  psi->add_option("--b", psi_b, "zero, w, c or h1:K");

  unsigned dim = 0, parity = 0;
  std::uint32_t c_index = 0, target = 0;
  auto* adm = app.add_subcommand("admissible", "admissible pairing with radical {0, a}");
  adm->add_option("--dim", dim, "dimension n")->required();
  adm->add_option("--c-index", c_index, "c as a coordinate bit mask")->required();
  adm->add_option("--parity", parity, "r in {0, 1}")->required();
  adm->add_option("--target", target, "a as a coordinate bit mask")->required();

  std::string f_text, lambda_text = "[1]";
  bool allow_nonsquare = false;
  unsigned bound = 0, budget = 0;
  auto* kum = app.add_subcommand("kummer", "Kummer quadrics for y^2 = f(x) and lambda");
  kum->add_option("--f", f_text, "[c0,...,c6]")->required();
  kum->add_option("--lambda", lambda_text, "[a0,...,a5]");
  kum->add_flag("--allow-nonsquare", allow_nonsquare, "emit the trace forms even if N(lambda) is not a square");
  auto* p0 = app.add_subcommand("p0-search", "discriminant and primes with ord_p disc = 1");
  p0->add_option("--f", f_text, "[c0,...,c6]")->required();
  p0->add_option("--bound", bound, "trial division bound");
  auto* gal = app.add_subcommand("galois-cert", "certify Galois group S6 by cycle types");
  gal->add_option("--f", f_text, "[c0,...,c6]")->required();
  gal->add_option("--budget", budget, "primes to examine");
  auto* self = app.add_subcommand("selftest", "internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    Config cfg = twistlab::cli::load_config(config_path);
    if (threads != 0) cfg.threads = threads;
    if (!format.empty()) cfg.format = format;
    json out;
    int code = 0;
    if (*survey) {
      out = twistlab::cli::survey_s6(cfg, a1_only);
    } else if (*h1) {
      out = twistlab::cli::h1(cfg, group, module);
    } else if (*assum) {
      out = twistlab::cli::assumptions(cfg, group, module);
    } else if (*ext) {
      out = twistlab::cli::extension_lab(cfg, group, ext_n, ext_m, control);
    } else if (*psi) {
      out = twistlab::cli::psi(cfg, group, module, psi_a, psi_b);
    } else if (*adm) {
      out = twistlab::cli::admissible(dim, c_index, parity, target);
    } else if (*kum) {
      out = twistlab::cli::kummer(f_text, lambda_text, allow_nonsquare);
    } else if (*p0) {
      out = twistlab::cli::p0_search(f_text, bound != 0 ? bound : cfg.trial_bound);
    } else if (*gal) {
      out = twistlab::cli::galois_cert(f_text, budget != 0 ? budget : cfg.prime_budget, cfg.threads);
    } else if (*self) {
      out = twistlab::cli::selftest(cfg);
      if (!out["passed"].get<bool>()) code = 1;
    }
    if (cfg.format == "text")
      std::cout << twistlab::cli::render_text(out);
    else
      std::cout << out.dump(2) << "\n";
    return code;
  } catch (const twistlab::CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return 3;
  } catch (const twistlab::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

#pragma once

// Subcommands of the twistlab tool as functions returning JSON documents.
// Every document carries "schemaVersion" and "command"; keys are sorted
// (nlohmann::json objects are ordered maps) so output is byte-stable.

#include <cstddef>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace twistlab::cli {

inline constexpr int kSchemaVersion = 1;

struct Config {
  std::size_t group_cap = 100000;
  std::size_t subgroup_cap = 1000;
  std::size_t gamma_cap = 200000;
  std::size_t e_cap = 400000;
  std::size_t assoc_samples = 300000;
  unsigned prime_budget = 2000;
  unsigned trial_bound = 100000;
  unsigned threads = 1;
  std::string format = "json";
};

/// Applies TWISTLAB_THREADS, then the key=value file at `path` when nonempty.
/// Throws PreconditionError on unknown keys or bad values.
Config load_config(const std::string& path);
void set_config_value(Config& cfg, const std::string& key, const std::string& value);

nlohmann::json survey_s6(const Config& cfg, bool assumption1_only);
/// module is perm6 or perm8; an empty group means the full symmetric group.
nlohmann::json h1(const Config& cfg, const std::string& group, const std::string& module);
nlohmann::json assumptions(const Config& cfg, const std::string& group, const std::string& module);
/// control is none, split or corrupt.
nlohmann::json extension_lab(const Config& cfg, const std::string& group, unsigned n, unsigned m,
                             const std::string& control);
/// a and b are zero, w, c or h1:K.
nlohmann::json psi(const Config& cfg, const std::string& group, const std::string& module, const std::string& a,
                   const std::string& b);
/// c and a are coordinate bit masks of F2^dim.
nlohmann::json admissible(unsigned dim, std::uint32_t c, unsigned parity, std::uint32_t a);
nlohmann::json kummer(const std::string& f, const std::string& lambda, bool allow_nonsquare);
nlohmann::json p0_search(const std::string& f, unsigned bound);
nlohmann::json galois_cert(const std::string& f, unsigned budget, unsigned threads);
/// Each internal consistency check with its outcome; "passed" is the conjunction.
nlohmann::json selftest(const Config& cfg);

/// One "path: value" line per leaf.
std::string render_text(const nlohmann::json& doc);

}  // namespace twistlab::cli

#pragma once

// Conditions (A), (B), (C) on a group acting on a symplectic F2-space, the
// condition pair called HS16 here (H1 = 0 and an element with a
// one-dimensional fixed space), and the survey of all subgroup classes of S6.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/cohomology.hpp"
#include "twistlab/groups.hpp"
#include "twistlab/symplectic.hpp"

namespace twistlab {

/// V is simple (every orbit spans V) and End_G(V) = F2.
bool check_A(const FiniteGroup& g, const ModuleAction& act);

/// First element in BFS order with V^g = 0.
std::optional<Index> check_B(const FiniteGroup& g, const ModuleAction& act);

struct CheckCResult {
  bool holds = false;
  /// Basis of the intersection of the kernels of restriction to cyclic
  /// subgroups, as coordinate masks in h.h1_basis.
  std::vector<std::uint64_t> intersection_basis;
};

/// Intersection over g of ker(H1(G,V) -> H1(<g>,V)) compared with the span of
/// c_class. With all_elements unset only one element per conjugacy class is
/// used, which suffices because restriction triviality is a class function.
CheckCResult check_C(const FiniteGroup& g, const ModuleAction& act, const H1Result& h, std::uint64_t c_class,
                     bool all_elements = false);

/// H1(G,V) = 0 and some g has dim V^g = 1.
bool check_HS16(const FiniteGroup& g, const ModuleAction& act, const H1Result& h);

struct AssumptionReport {
  std::size_t order = 0;
  std::vector<Key> generators;
  std::string generators_text;
  Fingerprint fp;
  bool transitive = false;
  unsigned h1_dim = 0;
  std::uint64_t c_class = 0;
  bool A = false;
  bool B = false;
  bool C = false;
  std::optional<Index> witness_b;
  std::string witness_b_text;
  std::vector<std::uint64_t> intersection_basis;
  bool hs16_raw = false;  ///< check_HS16 alone
  bool hs16 = false;      ///< check_HS16 together with (A)

  bool c_nonzero() const { return c_class != 0; }
  bool assumption1() const { return A && B && C; }
};

/// All checks for g acting on `space` through act. `transitive` is metadata
/// supplied by the caller.
AssumptionReport assess(const FiniteGroup& g, const ModuleAction& act, const SymplecticSpace& space,
                        bool transitive);

/// One report per conjugacy class of subgroups of S6 acting through the
/// six-point subset model, ordered by (order, fingerprint, generators).
std::vector<AssumptionReport> survey_s6(std::size_t subgroup_cap = 1000);

}  // namespace twistlab

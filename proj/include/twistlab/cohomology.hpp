#pragma once

// Low-degree cohomology of enumerated groups with coefficients in a module
// F2^dim (dim <= 32). Cocycle values are bit masks; a 2-cochain into mu_2 is a
// function (Index, Index) -> bit evaluated on demand.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "twistlab/groups.hpp"

namespace twistlab {

/// Table g -> a(g). A cocycle satisfies a(gh) = a(g) + g a(h).
struct Cocycle1 {
  std::vector<std::uint32_t> values;
  std::uint32_t operator[](Index g) const { return values[g]; }
  bool operator==(const Cocycle1&) const = default;
};

Cocycle1 operator+(const Cocycle1& a, const Cocycle1& b);
Cocycle1 zero_cocycle(const FiniteGroup& g);
/// g -> g m + m.
Cocycle1 coboundary(const FiniteGroup& g, const ModuleAction& act, std::uint32_t m);
/// Extends generator values along the BFS tree with a(x s) = a(x) + x a(s).
Cocycle1 cocycle_from_generator_values(const FiniteGroup& g, const ModuleAction& act,
                                       const std::vector<std::uint32_t>& gen_values);

/// Cocycle law on every Cayley edge (which implies it on all pairs).
bool is_cocycle_on_edges(const FiniteGroup& g, const ModuleAction& act, const Cocycle1& a);
/// Cocycle law on all pairs; uses g.mul.
bool is_cocycle_all_pairs(const FiniteGroup& g, const ModuleAction& act, const Cocycle1& a);

class H1Result {
 public:
  unsigned dim() const { return static_cast<unsigned>(h1_basis.size()); }
  unsigned dim_z1() const { return static_cast<unsigned>(z1_basis.size()); }
  unsigned dim_b1() const { return dim_b1_; }

  std::vector<Cocycle1> z1_basis;
  /// Representatives of a basis of Z1/B1.
  std::vector<Cocycle1> h1_basis;

  /// Coordinates of [a] in the h1_basis; throws PreconditionError if a is
  /// not a cocycle.
  std::uint64_t class_coords(const Cocycle1& a) const;
  bool is_coboundary(const Cocycle1& a) const { return class_coords(a) == 0; }

 private:
  friend H1Result h1(const FiniteGroup& g, const ModuleAction& act);
  const FiniteGroup* group_ = nullptr;
  const ModuleAction* act_ = nullptr;
  unsigned mdim_ = 0;
  unsigned dim_b1_ = 0;
  Echelon64 classes_;  ///< B1 rows untagged, h1 rows tagged by basis position
  std::uint64_t pack(const Cocycle1& a) const;
};

/// Z1 by generator unknowns (one per generator and module coordinate;
/// k * dim <= 64), B1 from the module basis. The result refers to g and act.
H1Result h1(const FiniteGroup& g, const ModuleAction& act);

/// True when [res_<g> a] = 0, i.e. a(g) lies in the image of g - 1.
bool restrict_to_cyclic_trivial(const ModuleAction& act, const Cocycle1& a, Index g);

using TwoCochain = std::function<bool(Index, Index)>;

/// Bilinear pairing given by a symmetric Gram matrix: e(x, y) = <x, B y>.
inline bool pairing(const SmallMat& gram, std::uint32_t x, std::uint32_t y) { return parity(x & gram.apply(y)); }

/// (a cup b)(s, t) = e(a(s), s b(t)).
TwoCochain cup_mu2(const FiniteGroup& g, const ModuleAction& act, const SmallMat& gram, const Cocycle1& a,
                   const Cocycle1& b);

/// eta(r,s) + eta(rs,t) + eta(r,st) + eta(s,t) = 0 on all triples, or on
/// `samples` pseudo-random triples when |G|^3 exceeds exhaustive_limit.
bool is_two_cocycle(const FiniteGroup& g, const TwoCochain& eta, std::size_t exhaustive_limit = 125000000,
                    std::size_t samples = 200000);

struct Cochain1Mu2 {
  std::vector<std::uint8_t> values;
  bool operator[](Index g) const { return values[g]; }
};

/// (d gamma)(s, t) = gamma(s) + gamma(t) + gamma(st).
bool coboundary_matches(const FiniteGroup& g, const Cochain1Mu2& gamma, const TwoCochain& eta, bool all_pairs);

/// Some gamma with d gamma = eta, or nullopt when [eta] != 0. Unknowns are the
/// generator values; gamma(1) = eta(1,1) and gamma(x s) = gamma(x) + gamma(s) +
/// eta(x, s) propagate along the BFS tree, and consistency on every
/// (element, generator) pair is imposed. For a 2-cocycle eta this already
/// forces d gamma = eta on all pairs: if it holds on (r, t) for all r then the
/// cocycle identity gives it on (r, t s). Throws PreconditionError when the
/// cocycle identity check fails (when check_cocycle is set).
std::optional<Cochain1Mu2> coboundary_solve(const FiniteGroup& g, const TwoCochain& eta, bool check_cocycle = true);

/// psi(s) = e(P, b(s)) + gamma(s) with (s + 1) P = a(s); -1 where V^s != 0.
struct PsiTable {
  std::vector<std::int8_t> values;
  bool defined(Index s) const { return values[s] >= 0; }
  /// Throws DomainError when V^s != 0.
  bool at(Index s) const;
};

/// Throws PreconditionError unless d gamma = a cup b on all Cayley edges.
PsiTable psi_table(const FiniteGroup& g, const ModuleAction& act, const SmallMat& gram, const Cocycle1& a,
                   const Cocycle1& b, const Cochain1Mu2& gamma);

struct SplittingCheck {
  std::size_t retractions = 0;  ///< number of <s>-equivariant retractions V_a -> mu_2
  bool value = false;           ///< retraction applied to (gamma(s), b(s))
  bool module_ok = false;       ///< V_a is a G-module
  bool cocycle_ok = false;      ///< (gamma, b) is a 1-cocycle valued in V_a
};

/// V_a = mu_2 + V with g (l, x) = (l + e(a(g), g x), g x). Throws DomainError
/// when V^s != 0.
SplittingCheck twisted_splitting_check(const FiniteGroup& g, const ModuleAction& act, const SmallMat& gram,
                                       const Cocycle1& a, const Cocycle1& b, const Cochain1Mu2& gamma, Index s);

}  // namespace twistlab

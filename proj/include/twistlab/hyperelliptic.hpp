#pragma once

// The subset model of the 2-torsion of a hyperelliptic Jacobian with n = 2d+2
// roots: V = (even subsets of {1..n}) / <all roots>, with e(S,T) = #(S n T).
// Subsets are n-bit masks, bit i standing for the label i+1.

#include <cstdint>
#include <vector>

#include "twistlab/cohomology.hpp"
#include "twistlab/groups.hpp"
#include "twistlab/symplectic.hpp"

namespace twistlab {

class PermutationModel {
 public:
  /// n in {6, 8}.
  explicit PermutationModel(unsigned n);

  unsigned n() const { return n_; }
  unsigned dim() const { return n_ - 2; }
  /// Classes of {i, i+1} for i = 0..n-3.
  const std::vector<std::uint32_t>& basis_subsets() const { return basis_; }
  /// Coordinates of the class of an even subset; throws on odd subsets.
  std::uint32_t encode(std::uint32_t subset) const;
  /// A representative subset of the class with the given coordinates.
  std::uint32_t lift(std::uint32_t v) const;
  /// Lexicographically smaller of S and its complement (as sorted label lists).
  std::uint32_t canonical(std::uint32_t subset) const;
  const SymplecticSpace& space() const { return space_; }

  std::uint32_t apply_perm(Key perm, std::uint32_t subset) const;
  SmallMat perm_to_sp(Key perm) const;
  ModuleAction action(const FiniteGroup& g) const;

  /// q_T(S) = #(S n T) + #S/2 mod 2; T must make it well defined on V
  /// (T odd when d is even, T even when d is odd).
  QuadraticRefinement q_T(std::uint32_t t) const;

 private:
  unsigned n_;
  std::vector<std::uint32_t> basis_;
  std::vector<std::uint32_t> encode_;  ///< indexed by subset mask; only even masks valid
  SymplecticSpace space_;
};

/// Symmetric group on n points generated by (1 2) and (1 2 ... n).
FiniteGroup symmetric_group(unsigned n, std::size_t cap = 100000);

/// w(s) = class(s T0 xor T0) for an odd subset T0.
Cocycle1 w_cocycle(const FiniteGroup& g, const PermutationModel& model, std::uint32_t t0 = 1);

struct CvsWReport {
  unsigned h1_dim = 0;
  std::uint64_t c_class = 0;
  std::uint64_t w_class = 0;
  bool equal = false;
  /// n = 6: c_{q_T} equals w_T as tables for every odd T; n = 8: the invariant refinement gives c = 0.
  bool witness_ok = false;
};

CvsWReport c_vs_w(const PermutationModel& model, const FiniteGroup& g);

}  // namespace twistlab

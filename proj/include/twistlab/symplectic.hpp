#pragma once

// Symplectic F2-spaces, quadratic refinements and the cocycle c_q.
// Vectors of V = F2^{2d} are bit masks; a refinement is its full value table
// (bit x of the 64-bit word is q(x)), so dim V <= 6.

#include <cstdint>
#include <utility>
#include <vector>

#include "twistlab/cohomology.hpp"
#include "twistlab/groups.hpp"

namespace twistlab {

class SymplecticSpace {
 public:
  /// Gram matrix must be alternating and invertible.
  explicit SymplecticSpace(const SmallMat& gram);
  /// Hyperbolic pairs (b_{2i}, b_{2i+1}), 1 <= d <= 3.
  static SymplecticSpace standard(unsigned d);

  unsigned dim() const { return gram_.dim(); }
  std::uint32_t size() const { return 1U << dim(); }
  const SmallMat& gram() const { return gram_; }
  bool e(std::uint32_t x, std::uint32_t y) const { return pairing(gram_, x, y); }
  /// g^T B g = B.
  bool preserves(const SmallMat& g) const;
  /// Pairs (a_i, b_i) with e(a_i, b_i) = 1 and all other pairings zero,
  /// obtained by a fixed elimination over the standard basis.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> symplectic_basis() const;

 private:
  SmallMat gram_;
};

/// T_v(x) = x + e(x, v) v.
SmallMat transvection(const SymplecticSpace& space, std::uint32_t v);
/// Closure of all transvections (greedy generating subset), whose membership
/// is then confirmed one by one.
FiniteGroup generate_sp(const SymplecticSpace& space, std::size_t cap);
/// 2^{d^2} prod_{i=1..d} (4^i - 1).
std::uint64_t sp_order_formula(unsigned d);

class QuadraticRefinement {
 public:
  QuadraticRefinement() = default;
  /// Validates q(x+y) + q(x) + q(y) = e(x,y) and q(0) = 0.
  QuadraticRefinement(const SymplecticSpace& space, std::uint64_t table);
  /// The refinement with prescribed values on the standard basis.
  static QuadraticRefinement from_basis_values(const SymplecticSpace& space, std::uint32_t basis_values);

  bool operator()(std::uint32_t x) const { return (table_ >> x) & 1ULL; }
  std::uint64_t table() const { return table_; }
  bool operator==(const QuadraticRefinement&) const = default;

 private:
  std::uint64_t table_ = 0;
};

/// All 2^{2d} refinements, ordered by their basis values.
std::vector<QuadraticRefinement> refinements(const SymplecticSpace& space);
/// sum q(a_i) q(b_i) over symplectic_basis().
bool arf(const SymplecticSpace& space, const QuadraticRefinement& q);
/// The value q takes most often.
bool arf_by_majority(const SymplecticSpace& space, const QuadraticRefinement& q);

bool preserves_refinement(const SymplecticSpace& space, const SmallMat& g, const QuadraticRefinement& q);
/// dim V^g mod 2; throws PreconditionError unless g lies in O(q).
bool dickson_parity(const SymplecticSpace& space, const SmallMat& g, const QuadraticRefinement& q);

/// c(g) with e(c(g), x) = q(g^-1 x) + q(x) for every x.
Cocycle1 c_cocycle(const FiniteGroup& g, const ModuleAction& act, const SymplecticSpace& space,
                   const QuadraticRefinement& q);

/// Coordinates of [c_q] in h1(G, V); the class does not depend on q.
std::uint64_t class_of_c(const H1Result& h, const FiniteGroup& g, const ModuleAction& act,
                         const SymplecticSpace& space);

}  // namespace twistlab

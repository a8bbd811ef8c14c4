#pragma once

// The semidirect product Gamma = V^n x| G and its central extension E by
// F2^S along eta = (a_i cup a_j)_{(i,j) in S}.
//
// A Gamma element (v_1..v_n, g) is packed as v * |G| + g, coordinate v_i in
// bits [i*dim, (i+1)*dim) of v and g an index into the base group. An E
// element (lambda, x) is the key (lambda << 40) | x.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "twistlab/cohomology.hpp"
#include "twistlab/groups.hpp"
#include "twistlab/symplectic.hpp"

namespace twistlab {

inline constexpr std::size_t kDefaultGammaCap = 200000;
inline constexpr std::size_t kDefaultECap = 400000;

namespace detail {
struct GammaTables;
struct ETables;
}  // namespace detail

class SemidirectGamma {
 public:
  /// Enumerates Gamma and verifies that every f_i is a 1-cocycle. Throws
  /// CapacityError when |V|^n |G| > cap.
  SemidirectGamma(const FiniteGroup& base, const ModuleAction& act, unsigned n, std::size_t cap = kDefaultGammaCap);

  unsigned n() const;
  unsigned dim() const;
  std::size_t base_order() const;
  std::size_t order() const;

  Index pack(std::uint32_t v, Index g) const;
  std::uint32_t box(Index x) const;
  Index base_index(Index x) const;
  std::uint32_t coord(Index x, unsigned i) const;
  Index mul(Index x, Index y) const;
  Index inv(Index x) const;
  /// g acting on one copy of V.
  std::uint32_t act(Index g, std::uint32_t w) const;

  const FiniteGroup& base() const { return *base_; }
  const ModuleAction& base_action() const { return *act_; }
  /// Enumerated group; its keys are packed elements.
  const FiniteGroup& group() const { return group_; }
  /// V as a Gamma-module through the projection, indexed like group().
  const ModuleAction& action() const { return gamma_act_; }
  /// f_i(v, g) = v_i on group().
  Cocycle1 f(unsigned i) const;

  std::shared_ptr<const detail::GammaTables> tables() const { return tables_; }

 private:
  const FiniteGroup* base_;
  const ModuleAction* act_;
  std::shared_ptr<const detail::GammaTables> tables_;
  FiniteGroup group_;
  ModuleAction gamma_act_;
};

/// Component s = (i, j) of eta: i, j index the cocycle list f_1..f_n followed
/// by the inflated classes.
struct EtaComponent {
  unsigned i = 0;
  unsigned j = 0;
};

/// Test controls: eta replaced by zero, or one value flipped.
struct EtaOverride {
  bool zero = false;
  Index x = 0;
  Index y = 0;
  std::uint64_t flip = 0;
};

class CentralExtE {
 public:
  /// S0 = {(n+k, j) : k < m, j < n} followed by S1 = {(i, j) : i < j < n}.
  /// The inflated classes must be cocycles on the base group. Throws
  /// CapacityError when 2^|S| |Gamma| > cap.
  /// e is the pairing with the given Gram matrix.
  CentralExtE(const SemidirectGamma& gamma, const SmallMat& gram, std::vector<Cocycle1> inflated,
              std::size_t cap = kDefaultECap, EtaOverride control = {});

  const SemidirectGamma& gamma() const { return *gamma_; }
  const SmallMat& gram() const { return gram_; }
  unsigned n() const { return gamma_->n(); }
  unsigned m() const { return static_cast<unsigned>(inflated_.size()); }
  const std::vector<EtaComponent>& components() const { return comps_; }
  unsigned num_components() const { return static_cast<unsigned>(comps_.size()); }
  std::size_t order() const { return gamma_->order() << comps_.size(); }

  /// a_i at a packed Gamma element.
  std::uint32_t a(unsigned i, Index x) const;
  /// eta(x, y) as a mask over S, for packed Gamma elements.
  std::uint64_t eta(Index x, Index y) const;

  static Key make_key(std::uint64_t lambda, Index x) { return (lambda << 40) | x; }
  static std::uint64_t lambda_of(Key k) { return k >> 40; }
  static Index gamma_of(Key k) { return static_cast<Index>(k & ((1ULL << 40) - 1)); }
  Key mul(Key p, Key q) const;
  Key inv(Key p) const;

  /// Enumerates E (lazily, once).
  const FiniteGroup& group() const;
  /// V through E -> G, indexed like group().
  const ModuleAction& action() const;
  /// a_i pulled back to group().
  Cocycle1 a_cocycle(unsigned i) const;
  /// gamma_s(lambda, x) = lambda_s on group().
  Cochain1Mu2 gamma_cochain(unsigned s) const;

 private:
  const SemidirectGamma* gamma_;
  SmallMat gram_;
  std::vector<Cocycle1> inflated_;
  std::vector<EtaComponent> comps_;
  std::size_t cap_;
  std::shared_ptr<const detail::ETables> tables_;
  mutable std::unique_ptr<FiniteGroup> group_;
  mutable std::unique_ptr<ModuleAction> action_;
};

struct AssocReport {
  bool associative = false;
  bool exhaustive = false;
  std::size_t checks = 0;
  /// A triple of E keys with (p q) r != p (q r) when not associative.
  std::optional<std::array<Key, 3>> witness;
};

/// Up to exhaustive_limit elements: Light's test over a generating set of Gamma
/// lifted to E, which is exhaustive because the law is affine in lambda: the
/// defect of (x s) y = x (s y) does not depend on the lambda parts, so x, y may
/// range over the zero section, and the central units need eta(x,1) = eta(1,y)
/// = 0. Above the limit, `samples` random triples of E.
AssocReport check_associativity(const CentralExtE& e, std::size_t exhaustive_limit = 50000,
                                std::size_t samples = 1000000, std::uint64_t seed = 1);

/// d gamma_s = a_i cup a_j on every Cayley edge of E, with the cup from the
/// cohomology module.
bool check_gamma_coboundaries(const CentralExtE& e);

/// The kernel F2^S -> E -> Gamma is central (checked against the generators).
bool check_kernel_central(const CentralExtE& e);

struct HomsFactorReport {
  std::size_t num_characters = 0;
  bool factors = false;  ///< every character kills F2^S and V^n
};
HomsFactorReport homs_factor_check(const CentralExtE& e);

/// Multiplicity of each pattern (psi_s(sigma))_s over the sigma in E lying over
/// the base element g, where psi_s = e(P_{i,sigma}, a_j(sigma)) + gamma_s and
/// (sigma + 1) P_{i,sigma} = a_i(sigma). Throws DomainError unless V^g = 0.
std::map<std::uint64_t, std::size_t> realized_sign_patterns(const CentralExtE& e, Index g);

/// Values of q_s(v) = eta_s((v,1), (v,1)) over V^n.
std::vector<std::uint8_t> quad_form_table(const CentralExtE& e, unsigned s);
/// For all v, w in V^n: the commutator of lifts of (v,1), (w,1) equals the
/// polarization of (q_s)_s.
bool commutator_is_polarization(const CentralExtE& e);

struct TrivializingLocus {
  std::vector<std::uint8_t> in_locus;      ///< restriction of f_1 to <sigma> trivial, by group() index
  std::vector<std::uint8_t> in_conjugates; ///< sigma in some conjugate of 0 x G
  std::size_t size = 0;
  bool agree = false;
  std::size_t nontrivial_characters = 0;
  bool characters_nonconstant = false;
};

/// Requires n = 1 and condition (A) for the base action (PreconditionError
/// otherwise).
TrivializingLocus trivializing_locus(const SemidirectGamma& gamma);

struct CupIndependence {
  bool forms_independent = false;
  bool classes_independent = false;
  bool ok() const { return forms_independent && classes_independent; }
};

/// The forms q_ij(v) = e(v_i, v_j), i < j < n, are linearly independent
/// functions on V^n (all nonzero combinations evaluated at every point).
bool quad_forms_independent(const SymplecticSpace& space, unsigned n);

/// Forms on the standard space of dimension 2d, and independence in H1 of the
/// first m classes among [w], then the remaining H1 basis, for the group
/// S_{2d+2} in the subset model (d = 2, 3) or Sp_2 on F2^2 (d = 1).
CupIndependence cup_independence_check(unsigned d, unsigned n, unsigned m);

}  // namespace twistlab

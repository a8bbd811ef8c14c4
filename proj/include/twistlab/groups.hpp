#pragma once

// Fully enumerated finite groups. Elements are 64-bit keys interpreted by a
// GroupLaw; a FiniteGroup stores them in BFS order from the identity (index 0)
// under right multiplication by the generators, so element x*s_j is reached
// from x along a Cayley edge labelled j.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/bits.hpp"
#include "twistlab/error.hpp"

namespace twistlab {

using Key = std::uint64_t;
using Index = std::uint32_t;
inline constexpr Index kNoIndex = 0xFFFFFFFFU;

class GroupLaw {
 public:
  virtual ~GroupLaw() = default;
  virtual Key identity() const = 0;
  virtual Key multiply(Key a, Key b) const = 0;
  virtual Key inverse(Key a) const = 0;
  virtual std::string format(Key a) const = 0;
};

/// Permutations of {0..degree-1}, degree <= 16, image of i in bits [4i, 4i+4).
/// Composition is (ab)(i) = a(b(i)).
class PermutationLaw final : public GroupLaw {
 public:
  explicit PermutationLaw(unsigned degree);
  unsigned degree() const { return degree_; }

  Key identity() const override { return id_; }
  Key multiply(Key a, Key b) const override;
  Key inverse(Key a) const override;
  /// Cycle notation on the labels 1..degree, "()" for the identity.
  std::string format(Key a) const override;

  static unsigned image(Key a, unsigned i) { return static_cast<unsigned>((a >> (4 * i)) & 0xFU); }
  Key from_images(const std::vector<unsigned>& images) const;
  /// Parses "(1 2)(3 4 5)" on labels 1..degree.
  Key parse(const std::string& cycles) const;
  /// Comma-separated list of cycle strings, commas outside parentheses.
  std::vector<Key> parse_list(const std::string& text) const;

 private:
  unsigned degree_;
  Key id_ = 0;
};

/// Invertible F2 matrices of dimension <= 8 keyed by SmallMat::pack().
class MatrixLaw final : public GroupLaw {
 public:
  explicit MatrixLaw(unsigned dim);
  unsigned dim() const { return dim_; }

  Key identity() const override { return id_; }
  Key multiply(Key a, Key b) const override;
  Key inverse(Key a) const override;
  std::string format(Key a) const override;

  SmallMat matrix(Key a) const { return SmallMat::unpack(a, dim_); }
  /// Parses "[1000 0100 0010 0001]" (rows; spaces or commas between rows).
  Key parse(const std::string& text) const;
  /// Comma-separated bracketed matrices.
  std::vector<Key> parse_list(const std::string& text) const;

 private:
  unsigned dim_;
  Key id_;
};

/// Splits on commas that are not nested inside () or [].
std::vector<std::string> split_top_level(const std::string& text);

class FiniteGroup {
 public:
  /// BFS closure of the generators. Throws CapacityError once |G| > cap.
  static FiniteGroup enumerate(std::shared_ptr<const GroupLaw> law, std::vector<Key> generators,
                               std::size_t cap);
  /// Keeps a candidate only if it lies outside the group generated so far.
  static FiniteGroup enumerate_greedy(std::shared_ptr<const GroupLaw> law, const std::vector<Key>& candidates,
                                      std::size_t cap);

  std::size_t order() const { return keys_.size(); }
  const GroupLaw& law() const { return *law_; }
  std::shared_ptr<const GroupLaw> law_ptr() const { return law_; }
  const std::vector<Key>& generators() const { return gens_; }
  unsigned num_generators() const { return static_cast<unsigned>(gens_.size()); }
  /// Index of generator j (set during enumeration).
  Index generator_index(unsigned j) const { return gen_index_[j]; }

  Key key(Index x) const { return keys_[x]; }
  const std::vector<Key>& keys() const { return keys_; }
  Index index_of(Key k) const;
  bool contains(Key k) const { return index_of(k) != kNoIndex; }

  /// x * s_j.
  Index succ(Index x, unsigned j) const { return succ_[static_cast<std::size_t>(j) * keys_.size() + x]; }
  Index inv(Index x) const { return inv_[x]; }
  /// BFS tree: x = parent(x) * s_{parent_gen(x)} for x != identity.
  Index parent(Index x) const { return parent_[x]; }
  unsigned parent_gen(Index x) const { return parent_gen_[x]; }

  /// Uses the multiplication table when built, else the law and a lookup.
  Index mul(Index a, Index b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * keys_.size() + b];
    return index_of(law_->multiply(keys_[a], keys_[b]));
  }
  /// Builds the |G|^2 multiplication table; refuses above max_order.
  void build_table(std::size_t max_order = 4096);
  bool has_table() const { return !table_.empty(); }

  Index conj(Index t, Index x) const { return mul(mul(t, x), inv(t)); }
  unsigned element_order(Index x) const;
  std::string format(Index x) const { return law_->format(keys_[x]); }

 private:
  std::shared_ptr<const GroupLaw> law_;
  std::vector<Key> gens_;
  std::vector<Index> gen_index_;
  std::vector<Key> keys_;
  std::vector<Index> hash_;
  std::uint64_t hash_mask_ = 0;
  std::vector<Index> succ_;
  std::vector<Index> inv_;
  std::vector<Index> parent_;
  std::vector<std::uint8_t> parent_gen_;
  std::vector<Index> table_;

  void rehash(std::size_t capacity);
  void insert_key(Key k, Index idx);
};

struct ConjugacyClasses {
  std::vector<std::vector<Index>> classes;  ///< classes[c][0] is the representative
  std::vector<std::uint32_t> class_of;
  /// witness[x] = t with t * rep * t^-1 = x.
  std::vector<Index> witness;
  std::size_t count() const { return classes.size(); }
  Index rep(std::size_t c) const { return classes[c][0]; }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

/// Linear action of a group on F2^dim, stored as dim row masks per element.
class ModuleAction {
 public:
  ModuleAction() = default;
  /// Propagates generator matrices along the BFS tree; checks every Cayley edge.
  static ModuleAction from_generators(const FiniteGroup& g, const std::vector<SmallMat>& gen_mats);
  static ModuleAction from_function(const FiniteGroup& g, unsigned dim,
                                    const std::function<SmallMat(Key)>& rep);

  unsigned dim() const { return dim_; }
  std::uint32_t apply(Index g, std::uint32_t x) const {
    const std::uint32_t* r = &rows_[static_cast<std::size_t>(g) * dim_];
    std::uint32_t out = 0;
    for (unsigned i = 0; i < dim_; ++i) out |= static_cast<std::uint32_t>(parity(r[i] & x)) << i;
    return out;
  }
  SmallMat matrix(Index g) const;
  /// Checks action(x s_j) = action(x) action(s_j) on all Cayley edges and action(1) = 1.
  bool verify_homomorphism(const FiniteGroup& g) const;

 private:
  unsigned dim_ = 0;
  std::vector<std::uint32_t> rows_;
};

/// Character tables (value 0/1 per element) of all homomorphisms G -> mu_2.
std::vector<std::vector<std::uint8_t>> homs_to_mu2(const FiniteGroup& g);
unsigned abelianization_f2_dim(const FiniteGroup& g);

struct Fingerprint {
  std::size_t order = 0;
  unsigned exponent = 0;
  std::vector<std::size_t> class_sizes;  ///< sorted ascending
  unsigned ab_dim = 0;
  auto operator<=>(const Fingerprint&) const = default;
  std::string to_string() const;
};

Fingerprint fingerprint(const FiniteGroup& g);

struct SubgroupClass {
  std::vector<Index> elements;  ///< sorted indices into the ambient group
  std::vector<Key> generators;
  std::size_t class_size = 0;
  std::size_t order() const { return elements.size(); }
};

/// Conjugacy classes of subgroups by cyclic extension: every representative H
/// is extended by each prime-power-order element outside it, and every
/// subgroup found is recorded together with all its conjugates.
std::vector<SubgroupClass> subgroups_up_to_conjugacy(FiniteGroup& g, std::size_t cap = 1000);

/// Transitive on {0..degree-1}; requires a PermutationLaw.
bool is_transitive(const PermutationLaw& law, const std::vector<Key>& generators);

/// Exhaustive associativity via Light's test: (x s) y = x (s y) for all x, y
/// and every generator s, plus a two-sided identity. Valid for any finite
/// magma generated by `gens` from `identity` under right multiplication.
bool light_associativity(std::size_t order, Index identity, const std::vector<Index>& gens,
                         const std::function<Index(Index, Index)>& mul);

}  // namespace twistlab

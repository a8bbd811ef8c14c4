#pragma once

// Word-sized F2 linear algebra. Vectors are bit masks (bit i = coordinate i);
// SmallMat stores rows, and matrices act on column vectors: (M x)_r is the
// parity of row r AND x. The general-size counterpart lives in f2.hpp.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistlab/error.hpp"

namespace twistlab {

inline constexpr unsigned kMaxSmallDim = 32;

inline bool parity(std::uint64_t x) { return std::popcount(x) & 1U; }

inline std::uint64_t low_mask(unsigned n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1ULL); }

/// Incremental row echelon form over F2 for vectors of at most 64 bits.
/// Each stored row has a distinct lowest set bit (its pivot). Optional tags
/// record which inserted vectors were combined to produce a row.
class Echelon64 {
 public:
  /// Reduces v against the stored rows; the residual has no pivot bits set.
  std::uint64_t reduce(std::uint64_t v, std::uint64_t* tag = nullptr) const {
    std::uint64_t t = 0;
    std::uint64_t hits = v & pivots_;
    while (hits != 0) {
      const unsigned p = static_cast<unsigned>(std::countr_zero(hits));
      v ^= rows_[p];
      t ^= tags_[p];
      hits = v & pivots_ & (p == 63 ? 0ULL : (~0ULL << (p + 1)));
    }
    if (tag != nullptr) *tag ^= t;
    return v;
  }

  /// Returns true when v was independent of the stored rows.
  bool insert(std::uint64_t v, std::uint64_t tag = 0) {
    std::uint64_t t = tag;
    const std::uint64_t r = reduce(v, &t);
    if (r == 0) return false;
    const unsigned p = static_cast<unsigned>(std::countr_zero(r));
    rows_[p] = r;
    tags_[p] = t;
    pivots_ |= 1ULL << p;
    ++rank_;
    return true;
  }

  bool contains(std::uint64_t v) const { return reduce(v) == 0; }
  unsigned rank() const { return rank_; }
  std::uint64_t pivot_mask() const { return pivots_; }

 private:
  std::array<std::uint64_t, 64> rows_{};
  std::array<std::uint64_t, 64> tags_{};
  std::uint64_t pivots_ = 0;
  unsigned rank_ = 0;
};

/// Basis of {u in F2^nvars : parity(row & u) = 0 for every row}.
std::vector<std::uint64_t> kernel64(std::span<const std::uint64_t> rows, unsigned nvars);

/// Some u with parity(rows[i] & u) = rhs[i] for all i, or nullopt if inconsistent.
std::optional<std::uint64_t> solve64(std::span<const std::uint64_t> rows,
                                     std::span<const std::uint8_t> rhs, unsigned nvars);

unsigned rank64(std::span<const std::uint64_t> vectors);

/// Square matrix over F2 of dimension at most 32, stored by rows.
class SmallMat {
 public:
  SmallMat() = default;
  explicit SmallMat(unsigned dim) : dim_(dim) {
    if (dim > kMaxSmallDim) throw ContractError("SmallMat dimension exceeds 32");
  }

  static SmallMat identity(unsigned dim) {
    SmallMat m(dim);
    for (unsigned i = 0; i < dim; ++i) m.rows_[i] = 1U << i;
    return m;
  }

  /// Builds a matrix whose column j is cols[j].
  static SmallMat from_columns(std::span<const std::uint32_t> cols) {
    SmallMat m(static_cast<unsigned>(cols.size()));
    for (unsigned j = 0; j < m.dim_; ++j)
      for (unsigned i = 0; i < m.dim_; ++i)
        if ((cols[j] >> i) & 1U) m.rows_[i] |= 1U << j;
    return m;
  }

  static SmallMat from_rows(std::span<const std::uint32_t> rows) {
    SmallMat m(static_cast<unsigned>(rows.size()));
    for (unsigned i = 0; i < m.dim_; ++i) m.rows_[i] = rows[i] & static_cast<std::uint32_t>(low_mask(m.dim_));
    return m;
  }

  /// Parses rows given as bit strings, leftmost character is column 0.
  static SmallMat from_strings(std::span<const std::string> rows);

  unsigned dim() const { return dim_; }
  std::uint32_t row(unsigned r) const { return rows_[r]; }
  void set_row(unsigned r, std::uint32_t bits) { rows_[r] = bits; }
  bool get(unsigned r, unsigned c) const { return (rows_[r] >> c) & 1U; }
  void set(unsigned r, unsigned c, bool v) {
    if (v) rows_[r] |= 1U << c;
    else rows_[r] &= ~(1U << c);
  }

  std::uint32_t column(unsigned c) const {
    std::uint32_t out = 0;
    for (unsigned r = 0; r < dim_; ++r) out |= ((rows_[r] >> c) & 1U) << r;
    return out;
  }

  std::uint32_t apply(std::uint32_t x) const {
    std::uint32_t out = 0;
    for (unsigned r = 0; r < dim_; ++r) out |= static_cast<std::uint32_t>(parity(rows_[r] & x)) << r;
    return out;
  }

  SmallMat operator*(const SmallMat& b) const {
    if (b.dim_ != dim_) throw ContractError("SmallMat product dimension mismatch");
    SmallMat c(dim_);
    for (unsigned r = 0; r < dim_; ++r) {
      std::uint32_t acc = 0;
      std::uint32_t bits = rows_[r];
      while (bits != 0) {
        const unsigned k = static_cast<unsigned>(std::countr_zero(bits));
        acc ^= b.rows_[k];
        bits &= bits - 1;
      }
      c.rows_[r] = acc;
    }
    return c;
  }

  SmallMat operator+(const SmallMat& b) const {
    if (b.dim_ != dim_) throw ContractError("SmallMat sum dimension mismatch");
    SmallMat c(dim_);
    for (unsigned r = 0; r < dim_; ++r) c.rows_[r] = rows_[r] ^ b.rows_[r];
    return c;
  }

  SmallMat transpose() const {
    SmallMat t(dim_);
    for (unsigned r = 0; r < dim_; ++r) t.rows_[r] = column(r);
    return t;
  }

  SmallMat plus_identity() const { return *this + identity(dim_); }

  bool operator==(const SmallMat& o) const {
    if (dim_ != o.dim_) return false;
    for (unsigned r = 0; r < dim_; ++r)
      if (rows_[r] != o.rows_[r]) return false;
    return true;
  }

  bool is_identity() const { return *this == identity(dim_); }

  unsigned rank() const {
    Echelon64 e;
    for (unsigned r = 0; r < dim_; ++r) e.insert(rows_[r]);
    return e.rank();
  }

  /// dim ker(M - 1), the dimension of the fixed space.
  unsigned fixed_dim() const { return dim_ - plus_identity().rank(); }

  std::optional<SmallMat> inverse() const;

  /// Basis of the column space.
  std::vector<std::uint32_t> image_basis() const;

  /// Basis of {x : M x = 0}.
  std::vector<std::uint32_t> kernel_basis() const;

  /// Packs a matrix with dim <= 8 into 64 bits, row r at bits [r*dim, (r+1)*dim).
  std::uint64_t pack() const;
  static SmallMat unpack(std::uint64_t key, unsigned dim);

  std::string to_string() const;

 private:
  unsigned dim_ = 0;
  std::array<std::uint32_t, kMaxSmallDim> rows_{};
};

}  // namespace twistlab

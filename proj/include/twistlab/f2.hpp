#pragma once

// Arbitrary-length (<= 4096) F2 vectors and matrices. Same column convention
// as bits.hpp: an r x c matrix maps F2^c to F2^r by (M x)_i = <row_i, x>.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/error.hpp"

namespace twistlab {

inline constexpr std::size_t kMaxF2Dim = 4096;

class F2Vec {
 public:
  F2Vec() = default;
  explicit F2Vec(std::size_t n);

  /// Low 64 bits taken from `word`, remaining bits zero.
  static F2Vec from_word(std::size_t n, std::uint64_t word);
  /// '0'/'1' characters, leftmost is coordinate 0.
  static F2Vec from_string(const std::string& s);
  static F2Vec unit(std::size_t n, std::size_t i);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = 1ULL << (i & 63);
    if (v) w_[i >> 6] |= m;
    else w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

  F2Vec& operator+=(const F2Vec& o);
  friend F2Vec operator+(F2Vec a, const F2Vec& b) { return a += b; }
  bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }

  /// Standard dot product over F2.
  bool dot(const F2Vec& o) const;
  bool is_zero() const;
  std::size_t weight() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const;
  std::uint64_t word(std::size_t k) const { return w_[k]; }
  std::size_t words() const { return w_.size(); }

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

class F2Mat {
 public:
  F2Mat() = default;
  F2Mat(std::size_t rows, std::size_t cols);
  static F2Mat identity(std::size_t n);
  static F2Mat from_rows(const std::vector<F2Vec>& rows);
  static F2Mat from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const F2Vec& row(std::size_t i) const { return rows_[i]; }
  F2Vec& row(std::size_t i) { return rows_[i]; }
  bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool v = true) { rows_[i].set(j, v); }
  void append_row(const F2Vec& r);

  F2Vec apply(const F2Vec& x) const;
  F2Mat operator*(const F2Mat& b) const;
  F2Mat operator+(const F2Mat& b) const;
  bool operator==(const F2Mat& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }
  F2Mat transpose() const;

  std::size_t rank() const;
  /// Some x with M x = b, or nullopt when b is not in the column space.
  std::optional<F2Vec> solve(const F2Vec& b) const;
  /// Basis of {x : M x = 0}.
  std::vector<F2Vec> kernel_basis() const;

 private:
  std::size_t cols_ = 0;
  std::vector<F2Vec> rows_;
};

inline std::size_t rank(const F2Mat& m) { return m.rank(); }

/// Incremental echelon basis. Each stored row has a distinct lowest bit and
/// zeros at the pivots of earlier rows. Tags track which inserted vectors a
/// stored row is the sum of.
class RowReducer {
 public:
  explicit RowReducer(std::size_t n, std::size_t tag_len = 0);

  /// Residual of v; when tag is non-null it accumulates the combination used.
  F2Vec reduce(F2Vec v, F2Vec* tag = nullptr) const;
  bool insert(const F2Vec& v, const F2Vec* tag = nullptr);
  bool contains(const F2Vec& v) const { return reduce(v).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  std::size_t tag_len_;
  std::vector<F2Vec> rows_;
  std::vector<F2Vec> tags_;
  std::vector<std::size_t> pivots_;
};

/// Coordinates on span(subspace + complement) / span(subspace) with respect to
/// the complement basis.
class QuotientSpace {
 public:
  /// When `complement` is empty it is chosen greedily from `ambient`, or from
  /// the standard basis if no ambient basis is declared.
  QuotientSpace(std::size_t n, std::vector<F2Vec> subspace, std::vector<F2Vec> complement = {},
                std::vector<F2Vec> ambient = {});

  /// Throws ContractError if v lies outside the ambient span.
  F2Vec coords(const F2Vec& v) const;
  F2Vec lift(const F2Vec& coords) const;
  std::size_t dim() const { return complement_.size(); }
  std::size_t ambient_size() const { return n_; }
  const std::vector<F2Vec>& complement() const { return complement_; }
  const std::vector<F2Vec>& subspace() const { return subspace_; }

 private:
  std::size_t n_;
  std::vector<F2Vec> subspace_;
  std::vector<F2Vec> complement_;
  RowReducer reducer_;
};

}  // namespace twistlab

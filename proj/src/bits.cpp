#include "twistlab/bits.hpp"

#include <algorithm>

namespace twistlab {

namespace {

struct ReducedSystem {
  std::vector<std::uint64_t> rows;
  std::vector<std::uint8_t> rhs;
  std::vector<unsigned> pivot;
  bool consistent = true;
};

// Full Gauss-Jordan elimination; pivots are lowest set bits.
ReducedSystem gauss_jordan(std::span<const std::uint64_t> rows, std::span<const std::uint8_t> rhs,
                           unsigned nvars) {
  ReducedSystem out;
  const std::uint64_t mask = low_mask(nvars);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t r = rows[i] & mask;
    std::uint8_t b = rhs.empty() ? 0 : rhs[i];
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
      if ((r >> out.pivot[k]) & 1ULL) {
        r ^= out.rows[k];
        b ^= out.rhs[k];
      }
    }
    if (r == 0) {
      if (b != 0) out.consistent = false;
      continue;
    }
    const unsigned p = static_cast<unsigned>(std::countr_zero(r));
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
      if ((out.rows[k] >> p) & 1ULL) {
        out.rows[k] ^= r;
        out.rhs[k] ^= b;
      }
    }
    out.rows.push_back(r);
    out.rhs.push_back(b);
    out.pivot.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> kernel64(std::span<const std::uint64_t> rows, unsigned nvars) {
  if (nvars > 64) throw ContractError("kernel64 supports at most 64 unknowns");
  const ReducedSystem sys = gauss_jordan(rows, {}, nvars);
  std::uint64_t pivot_mask = 0;
  for (unsigned p : sys.pivot) pivot_mask |= 1ULL << p;
  std::vector<std::uint64_t> basis;
  for (unsigned f = 0; f < nvars; ++f) {
    if ((pivot_mask >> f) & 1ULL) continue;
    std::uint64_t u = 1ULL << f;
    for (std::size_t k = 0; k < sys.rows.size(); ++k)
      if ((sys.rows[k] >> f) & 1ULL) u |= 1ULL << sys.pivot[k];
    basis.push_back(u);
  }
  return basis;
}

std::optional<std::uint64_t> solve64(std::span<const std::uint64_t> rows,
                                     std::span<const std::uint8_t> rhs, unsigned nvars) {
  if (nvars > 64) throw ContractError("solve64 supports at most 64 unknowns");
  if (rhs.size() != rows.size()) throw ContractError("solve64 right-hand side length mismatch");
  const ReducedSystem sys = gauss_jordan(rows, rhs, nvars);
  if (!sys.consistent) return std::nullopt;
  std::uint64_t u = 0;
  for (std::size_t k = 0; k < sys.rows.size(); ++k)
    if (sys.rhs[k]) u |= 1ULL << sys.pivot[k];
  return u;
}

unsigned rank64(std::span<const std::uint64_t> vectors) {
  Echelon64 e;
  for (std::uint64_t v : vectors) e.insert(v);
  return e.rank();
}

SmallMat SmallMat::from_strings(std::span<const std::string> rows) {
  SmallMat m(static_cast<unsigned>(rows.size()));
  for (unsigned r = 0; r < m.dim_; ++r) {
    if (rows[r].size() != m.dim_) throw ContractError("matrix row '" + rows[r] + "' has wrong length");
    for (unsigned c = 0; c < m.dim_; ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1') throw ContractError("matrix rows must be bit strings");
      m.set(r, c, ch == '1');
    }
  }
  return m;
}

std::optional<SmallMat> SmallMat::inverse() const {
  std::array<std::uint64_t, kMaxSmallDim> aug{};
  for (unsigned r = 0; r < dim_; ++r) aug[r] = rows_[r] | (static_cast<std::uint64_t>(1U << r) << 32);
  for (unsigned c = 0; c < dim_; ++c) {
    unsigned p = c;
    while (p < dim_ && !((aug[p] >> c) & 1ULL)) ++p;
    if (p == dim_) return std::nullopt;
    std::swap(aug[p], aug[c]);
    for (unsigned r = 0; r < dim_; ++r)
      if (r != c && ((aug[r] >> c) & 1ULL)) aug[r] ^= aug[c];
  }
  SmallMat inv(dim_);
  for (unsigned r = 0; r < dim_; ++r) inv.rows_[r] = static_cast<std::uint32_t>(aug[r] >> 32);
  return inv;
}

std::vector<std::uint32_t> SmallMat::image_basis() const {
  Echelon64 e;
  std::vector<std::uint32_t> basis;
  for (unsigned c = 0; c < dim_; ++c) {
    const std::uint32_t col = column(c);
    if (e.insert(col)) basis.push_back(col);
  }
  return basis;
}

std::vector<std::uint32_t> SmallMat::kernel_basis() const {
  std::vector<std::uint64_t> rows(rows_.begin(), rows_.begin() + dim_);
  std::vector<std::uint32_t> out;
  for (std::uint64_t v : kernel64(rows, dim_)) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

std::uint64_t SmallMat::pack() const {
  if (dim_ > 8) throw ContractError("only matrices of dimension <= 8 can be packed");
  std::uint64_t key = 0;
  for (unsigned r = 0; r < dim_; ++r) key |= static_cast<std::uint64_t>(rows_[r]) << (r * dim_);
  return key;
}

SmallMat SmallMat::unpack(std::uint64_t key, unsigned dim) {
  SmallMat m(dim);
  const std::uint64_t mask = low_mask(dim);
  for (unsigned r = 0; r < dim; ++r) m.rows_[r] = static_cast<std::uint32_t>((key >> (r * dim)) & mask);
  return m;
}

std::string SmallMat::to_string() const {
  std::string s;
  for (unsigned r = 0; r < dim_; ++r) {
    if (r != 0) s += ' ';
    for (unsigned c = 0; c < dim_; ++c) s += get(r, c) ? '1' : '0';
  }
  return s;
}

}  // namespace twistlab

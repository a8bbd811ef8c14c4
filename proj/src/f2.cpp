#include "twistlab/f2.hpp"

#include <bit>

namespace twistlab {

namespace {

void check_len(std::size_t n) {
  if (n > kMaxF2Dim) throw ContractError("F2 dimension " + std::to_string(n) + " exceeds 4096");
}

}  // namespace

F2Vec::F2Vec(std::size_t n) : n_(n) {
  check_len(n);
  w_.assign((n + 63) / 64, 0);
}

F2Vec F2Vec::from_word(std::size_t n, std::uint64_t word) {
  F2Vec v(n);
  if (n == 0) return v;
  v.w_[0] = n >= 64 ? word : (word & ((1ULL << n) - 1ULL));
  return v;
}

F2Vec F2Vec::from_string(const std::string& s) {
  F2Vec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw ContractError("bit string expected, got '" + s + "'");
    if (s[i] == '1') v.set(i);
  }
  return v;
}

F2Vec F2Vec::unit(std::size_t n, std::size_t i) {
  F2Vec v(n);
  v.set(i);
  return v;
}

F2Vec& F2Vec::operator+=(const F2Vec& o) {
  if (o.n_ != n_) throw ContractError("F2Vec length mismatch in addition");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  return *this;
}

bool F2Vec::dot(const F2Vec& o) const {
  if (o.n_ != n_) throw ContractError("F2Vec length mismatch in dot product");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
  return std::popcount(acc) & 1U;
}

bool F2Vec::is_zero() const {
  for (std::uint64_t x : w_)
    if (x != 0) return false;
  return true;
}

std::size_t F2Vec::weight() const {
  std::size_t c = 0;
  for (std::uint64_t x : w_) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

std::size_t F2Vec::lowest() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
  return n_;
}

std::string F2Vec::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

F2Mat::F2Mat(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, F2Vec(cols)) {
  check_len(rows);
}

F2Mat F2Mat::identity(std::size_t n) {
  F2Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

F2Mat F2Mat::from_rows(const std::vector<F2Vec>& rows) {
  F2Mat m;
  if (rows.empty()) return m;
  m.cols_ = rows[0].size();
  for (const F2Vec& r : rows) m.append_row(r);
  return m;
}

F2Mat F2Mat::from_strings(const std::vector<std::string>& rows) {
  std::vector<F2Vec> v;
  for (const std::string& s : rows) v.push_back(F2Vec::from_string(s));
  return from_rows(v);
}

void F2Mat::append_row(const F2Vec& r) {
  if (r.size() != cols_) throw ContractError("F2Mat row length mismatch");
  rows_.push_back(r);
}

F2Vec F2Mat::apply(const F2Vec& x) const {
  if (x.size() != cols_) throw ContractError("F2Mat apply: vector length must equal column count");
  F2Vec out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].dot(x)) out.set(i);
  return out;
}

F2Mat F2Mat::operator*(const F2Mat& b) const {
  if (cols_ != b.rows()) throw ContractError("F2Mat product dimension mismatch");
  F2Mat c(rows_.size(), b.cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (rows_[i].get(k)) c.rows_[i] += b.rows_[k];
  return c;
}

F2Mat F2Mat::operator+(const F2Mat& b) const {
  if (cols_ != b.cols_ || rows_.size() != b.rows()) throw ContractError("F2Mat sum dimension mismatch");
  F2Mat c = *this;
  for (std::size_t i = 0; i < rows_.size(); ++i) c.rows_[i] += b.rows_[i];
  return c;
}

F2Mat F2Mat::transpose() const {
  F2Mat t(cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[i].get(j)) t.set(j, i);
  return t;
}

std::size_t F2Mat::rank() const {
  RowReducer r(cols_);
  for (const F2Vec& row : rows_) r.insert(row);
  return r.rank();
}

std::optional<F2Vec> F2Mat::solve(const F2Vec& b) const {
  if (b.size() != rows_.size()) throw ContractError("solve: right-hand side length must equal row count");
  // Augmented rows [row_i | b_i]; an inconsistent system leaves a pure b residual.
  // Stored rows vanish at earlier pivots, so reverse back-substitution is exact.
  RowReducer red(cols_ + 1);
  std::vector<F2Vec> rows;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    F2Vec a(cols_ + 1);
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[i].get(j)) a.set(j);
    if (b.get(i)) a.set(cols_);
    F2Vec res = red.reduce(a);
    if (res.is_zero()) continue;
    if (res.lowest() == cols_) return std::nullopt;
    red.insert(res);
    rows.push_back(std::move(res));
  }
  F2Vec x(cols_);
  for (std::size_t k = rows.size(); k-- > 0;) {
    const F2Vec& r = rows[k];
    const std::size_t p = r.lowest();
    bool val = r.get(cols_);
    for (std::size_t j = p + 1; j < cols_; ++j)
      if (r.get(j) && x.get(j)) val = !val;
    x.set(p, val);
  }
  return x;
}

std::vector<F2Vec> F2Mat::kernel_basis() const {
  // Fully reduced echelon form, then one kernel vector per free column.
  std::vector<F2Vec> ech;
  std::vector<std::size_t> piv;
  for (const F2Vec& row : rows_) {
    F2Vec r = row;
    for (std::size_t k = 0; k < ech.size(); ++k)
      if (r.get(piv[k])) r += ech[k];
    if (r.is_zero()) continue;
    const std::size_t p = r.lowest();
    for (std::size_t k = 0; k < ech.size(); ++k)
      if (ech[k].get(p)) ech[k] += r;
    ech.push_back(r);
    piv.push_back(p);
  }
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : piv) is_pivot[p] = true;
  std::vector<F2Vec> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    F2Vec u = F2Vec::unit(cols_, f);
    for (std::size_t k = 0; k < ech.size(); ++k)
      if (ech[k].get(f)) u.set(piv[k]);
    basis.push_back(u);
  }
  return basis;
}

RowReducer::RowReducer(std::size_t n, std::size_t tag_len) : n_(n), tag_len_(tag_len) { check_len(n); }

F2Vec RowReducer::reduce(F2Vec v, F2Vec* tag) const {
  if (v.size() != n_) throw ContractError("RowReducer vector length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (v.get(pivots_[k])) {
      v += rows_[k];
      if (tag != nullptr) *tag += tags_[k];
    }
  }
  return v;
}

bool RowReducer::insert(const F2Vec& v, const F2Vec* tag) {
  F2Vec t = tag != nullptr ? *tag : F2Vec(tag_len_);
  if (t.size() != tag_len_) throw ContractError("RowReducer tag length mismatch");
  F2Vec r = reduce(v, &t);
  if (r.is_zero()) return false;
  pivots_.push_back(r.lowest());
  rows_.push_back(std::move(r));
  tags_.push_back(std::move(t));
  return true;
}

QuotientSpace::QuotientSpace(std::size_t n, std::vector<F2Vec> subspace, std::vector<F2Vec> complement,
                             std::vector<F2Vec> ambient)
    : n_(n), subspace_(std::move(subspace)), complement_(std::move(complement)), reducer_(n, 0) {
  for (const F2Vec& s : subspace_)
    if (s.size() != n) throw ContractError("subspace vector has wrong length");
  RowReducer amb(n);
  for (const F2Vec& a : ambient) {
    if (a.size() != n) throw ContractError("ambient vector has wrong length");
    amb.insert(a);
  }
  RowReducer span(n);
  for (const F2Vec& s : subspace_) {
    if (!span.insert(s)) throw ContractError("subspace vectors must be independent");
    if (!ambient.empty() && !amb.contains(s)) throw ContractError("subspace is not inside the declared ambient");
  }
  if (complement_.empty()) {
    const std::vector<F2Vec>* pool = &ambient;
    std::vector<F2Vec> standard;
    if (ambient.empty()) {
      for (std::size_t i = 0; i < n; ++i) standard.push_back(F2Vec::unit(n, i));
      pool = &standard;
    }
    for (const F2Vec& c : *pool)
      if (span.insert(c)) complement_.push_back(c);
  } else {
    for (const F2Vec& c : complement_) {
      if (c.size() != n) throw ContractError("complement vector has wrong length");
      if (!span.insert(c)) throw ContractError("complement is not independent modulo the subspace");
      if (!ambient.empty() && !amb.contains(c)) throw ContractError("complement is not inside the declared ambient");
    }
    if (!ambient.empty() && span.rank() != amb.rank())
      throw ContractError("subspace and complement do not span the declared ambient");
  }
  const std::size_t total = subspace_.size() + complement_.size();
  reducer_ = RowReducer(n, total);
  for (std::size_t i = 0; i < subspace_.size(); ++i) {
    F2Vec t = F2Vec::unit(total, i);
    reducer_.insert(subspace_[i], &t);
  }
  for (std::size_t j = 0; j < complement_.size(); ++j) {
    F2Vec t = F2Vec::unit(total, subspace_.size() + j);
    reducer_.insert(complement_[j], &t);
  }
}

F2Vec QuotientSpace::coords(const F2Vec& v) const {
  if (v.size() != n_) throw ContractError("quotient_coords: vector has wrong length");
  F2Vec tag(subspace_.size() + complement_.size());
  if (!reducer_.reduce(v, &tag).is_zero()) throw ContractError("vector lies outside the ambient span");
  F2Vec out(complement_.size());
  for (std::size_t j = 0; j < complement_.size(); ++j)
    if (tag.get(subspace_.size() + j)) out.set(j);
  return out;
}

F2Vec QuotientSpace::lift(const F2Vec& c) const {
  if (c.size() != complement_.size()) throw ContractError("lift: coordinate length mismatch");
  F2Vec v(n_);
  for (std::size_t j = 0; j < complement_.size(); ++j)
    if (c.get(j)) v += complement_[j];
  return v;
}

}  // namespace twistlab

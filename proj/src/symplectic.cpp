#include "twistlab/symplectic.hpp"

#include <memory>

namespace twistlab {

SymplecticSpace::SymplecticSpace(const SmallMat& gram) : gram_(gram) {
  if (gram.dim() > 6) throw ContractError("symplectic spaces of dimension at most 6 are supported");
  if (!(gram.transpose() == gram)) throw ContractError("Gram matrix is not symmetric");
  for (unsigned i = 0; i < gram.dim(); ++i)
    if (gram.get(i, i)) throw ContractError("Gram matrix is not alternating");
  if (gram.rank() != gram.dim()) throw ContractError("Gram matrix is degenerate");
}

SymplecticSpace SymplecticSpace::standard(unsigned d) {
  if (d < 1 || d > 3) throw ContractError("standard symplectic space needs 1 <= d <= 3");
  SmallMat g(2 * d);
  for (unsigned i = 0; i < d; ++i) {
    g.set(2 * i, 2 * i + 1, true);
    g.set(2 * i + 1, 2 * i, true);
  }
  return SymplecticSpace(g);
}

bool SymplecticSpace::preserves(const SmallMat& g) const { return g.transpose() * gram_ * g == gram_; }

std::vector<std::pair<std::uint32_t, std::uint32_t>> SymplecticSpace::symplectic_basis() const {
  std::vector<std::uint32_t> pool;
  for (unsigned i = 0; i < dim(); ++i) pool.push_back(1U << i);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  while (!pool.empty()) {
    const std::uint32_t a = pool.front();
    std::size_t bi = 1;
    while (bi < pool.size() && !e(a, pool[bi])) ++bi;
    if (bi == pool.size()) throw ContractError("symplectic basis completion failed");
    const std::uint32_t b = pool[bi];
    out.emplace_back(a, b);
    std::vector<std::uint32_t> rest;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (i == bi) continue;
      std::uint32_t w = pool[i];
      // Project onto <a, b>^perp.
      if (e(w, b)) w ^= a;
      if (e(w, a)) w ^= b;
      rest.push_back(w);
    }
    pool = std::move(rest);
  }
  return out;
}

SmallMat transvection(const SymplecticSpace& space, std::uint32_t v) {
  if (v == 0 || v >= space.size()) throw ContractError("transvection needs a nonzero vector of the space");
  const unsigned n = space.dim();
  std::vector<std::uint32_t> cols(n);
  for (unsigned j = 0; j < n; ++j) cols[j] = (1U << j) ^ (space.e(1U << j, v) ? v : 0);
  return SmallMat::from_columns(cols);
}

FiniteGroup generate_sp(const SymplecticSpace& space, std::size_t cap) {
  auto law = std::make_shared<MatrixLaw>(space.dim());
  std::vector<Key> cands;
  for (std::uint32_t v = 1; v < space.size(); ++v) cands.push_back(transvection(space, v).pack());
  FiniteGroup g = FiniteGroup::enumerate_greedy(law, cands, cap);
  for (Key c : cands)
    if (!g.contains(c)) throw ContractError("transvection missing from the generated group");
  return g;
}

std::uint64_t sp_order_formula(unsigned d) {
  std::uint64_t o = 1ULL << (d * d);
  std::uint64_t four = 1;
  for (unsigned i = 1; i <= d; ++i) {
    four *= 4;
    o *= four - 1;
  }
  return o;
}

QuadraticRefinement::QuadraticRefinement(const SymplecticSpace& space, std::uint64_t table) : table_(table) {
  if ((*this)(0)) throw ContractError("refinement must vanish at 0");
  for (std::uint32_t x = 0; x < space.size(); ++x)
    for (std::uint32_t y = 0; y < space.size(); ++y)
      if (((*this)(x ^ y) ^ (*this)(x) ^ (*this)(y)) != space.e(x, y))
        throw ContractError("table is not a quadratic refinement of the pairing");
}

QuadraticRefinement QuadraticRefinement::from_basis_values(const SymplecticSpace& space,
                                                           std::uint32_t basis_values) {
  // q(x + b_i) = q(x) + q(b_i) + e(x, b_i), adding basis vectors in order.
  std::uint64_t t = 0;
  for (std::uint32_t x = 1; x < space.size(); ++x) {
    const unsigned i = static_cast<unsigned>(std::countr_zero(x));
    const std::uint32_t rest = x & (x - 1);
    const bool v = ((t >> rest) & 1ULL) ^ ((basis_values >> i) & 1U) ^ space.e(rest, 1U << i);
    if (v) t |= 1ULL << x;
  }
  return QuadraticRefinement(space, t);
}

std::vector<QuadraticRefinement> refinements(const SymplecticSpace& space) {
  std::vector<QuadraticRefinement> out;
  for (std::uint32_t bv = 0; bv < space.size(); ++bv) out.push_back(QuadraticRefinement::from_basis_values(space, bv));
  return out;
}

bool arf(const SymplecticSpace& space, const QuadraticRefinement& q) {
  bool s = false;
  for (const auto& [a, b] : space.symplectic_basis()) s ^= q(a) && q(b);
  return s;
}

bool arf_by_majority(const SymplecticSpace& space, const QuadraticRefinement& q) {
  std::uint32_t ones = 0;
  for (std::uint32_t x = 0; x < space.size(); ++x) ones += q(x);
  return 2 * ones > space.size();
}

bool preserves_refinement(const SymplecticSpace& space, const SmallMat& g, const QuadraticRefinement& q) {
  for (std::uint32_t x = 0; x < space.size(); ++x)
    if (q(g.apply(x)) != q(x)) return false;
  return true;
}

bool dickson_parity(const SymplecticSpace& space, const SmallMat& g, const QuadraticRefinement& q) {
  if (!preserves_refinement(space, g, q)) throw PreconditionError("element does not preserve the refinement");
  return g.fixed_dim() & 1U;
}

Cocycle1 c_cocycle(const FiniteGroup& g, const ModuleAction& act, const SymplecticSpace& space,
                   const QuadraticRefinement& q) {
  if (act.dim() != space.dim()) throw ContractError("module and symplectic space dimensions differ");
  const SmallMat binv = *space.gram().inverse();
  Cocycle1 c = zero_cocycle(g);
  for (Index x = 0; x < g.order(); ++x) {
    const Index xi = g.inv(x);
    std::uint32_t defect = 0;
    for (unsigned i = 0; i < space.dim(); ++i)
      if (q(act.apply(xi, 1U << i)) ^ q(1U << i)) defect |= 1U << i;
    // e(c, b_i) = (B c)_i, so c = B^-1 defect.
    c.values[x] = binv.apply(defect);
  }
  return c;
}

std::uint64_t class_of_c(const H1Result& h, const FiniteGroup& g, const ModuleAction& act,
                         const SymplecticSpace& space) {
  return h.class_coords(c_cocycle(g, act, space, QuadraticRefinement::from_basis_values(space, 0)));
}

}  // namespace twistlab

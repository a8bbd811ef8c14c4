#include "twistlab/hyperelliptic.hpp"

#include <algorithm>
#include <bit>
#include <memory>

#include "twistlab/f2.hpp"

namespace twistlab {

namespace {

SmallMat model_gram(const std::vector<std::uint32_t>& basis) {
  SmallMat g(static_cast<unsigned>(basis.size()));
  for (unsigned i = 0; i < basis.size(); ++i)
    for (unsigned j = 0; j < basis.size(); ++j) g.set(i, j, std::popcount(basis[i] & basis[j]) & 1);
  return g;
}

std::vector<std::uint32_t> adjacent_pairs(unsigned n) {
  std::vector<std::uint32_t> b;
  for (unsigned i = 0; i + 2 < n; ++i) b.push_back((1U << i) | (1U << (i + 1)));
  return b;
}

}  // namespace

PermutationModel::PermutationModel(unsigned n)
    : n_(n), basis_(n == 6 || n == 8 ? adjacent_pairs(n) : throw ContractError("model needs n in {6, 8}")),
      space_(model_gram(basis_)) {
  std::vector<F2Vec> ambient;
  for (unsigned i = 0; i + 1 < n; ++i) ambient.push_back(F2Vec::from_word(n, (1ULL << i) | (1ULL << (i + 1))));
  std::vector<F2Vec> comp;
  for (std::uint32_t b : basis_) comp.push_back(F2Vec::from_word(n, b));
  const QuotientSpace quot(n, {F2Vec::from_word(n, (1ULL << n) - 1)}, comp, ambient);
  encode_.assign(1U << n, 0xFFFFFFFFU);
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) & 1) continue;
    const F2Vec c = quot.coords(F2Vec::from_word(n, s));
    encode_[s] = static_cast<std::uint32_t>(c.word(0));
  }
}

std::uint32_t PermutationModel::encode(std::uint32_t subset) const {
  if (subset >= encode_.size() || encode_[subset] == 0xFFFFFFFFU)
    throw ContractError("only even subsets of the roots define classes");
  return encode_[subset];
}

std::uint32_t PermutationModel::lift(std::uint32_t v) const {
  std::uint32_t s = 0;
  for (unsigned j = 0; j < basis_.size(); ++j)
    if ((v >> j) & 1U) s ^= basis_[j];
  return s;
}

std::uint32_t PermutationModel::canonical(std::uint32_t subset) const {
  const std::uint32_t comp = subset ^ ((1U << n_) - 1U);
  auto labels = [&](std::uint32_t m) {
    std::vector<unsigned> l;
    for (unsigned i = 0; i < n_; ++i)
      if ((m >> i) & 1U) l.push_back(i);
    return l;
  };
  const auto a = labels(subset);
  const auto b = labels(comp);
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end()) ? comp : subset;
}

std::uint32_t PermutationModel::apply_perm(Key perm, std::uint32_t subset) const {
  std::uint32_t out = 0;
  for (unsigned i = 0; i < n_; ++i)
    if ((subset >> i) & 1U) out |= 1U << PermutationLaw::image(perm, i);
  return out;
}

SmallMat PermutationModel::perm_to_sp(Key perm) const {
  std::vector<std::uint32_t> cols;
  for (std::uint32_t b : basis_) cols.push_back(encode(apply_perm(perm, b)));
  return SmallMat::from_columns(cols);
}

ModuleAction PermutationModel::action(const FiniteGroup& g) const {
  const auto* law = dynamic_cast<const PermutationLaw*>(&g.law());
  if (law == nullptr || law->degree() != n_) throw ContractError("group must act on the model's roots");
  return ModuleAction::from_function(g, dim(), [this](Key k) { return perm_to_sp(k); });
}

QuadraticRefinement PermutationModel::q_T(std::uint32_t t) const {
  const unsigned d = (n_ - 2) / 2;
  if ((std::popcount(t) & 1) != static_cast<int>((d + 1) & 1U))
    throw ContractError("q_T descends to V only for subsets T of the right parity");
  std::uint64_t table = 0;
  for (std::uint32_t v = 0; v < space_.size(); ++v) {
    const std::uint32_t s = lift(v);
    const bool q = ((std::popcount(s & t) + std::popcount(s) / 2) & 1) != 0;
    if (q) table |= 1ULL << v;
  }
  return QuadraticRefinement(space_, table);
}

FiniteGroup symmetric_group(unsigned n, std::size_t cap) {
  auto law = std::make_shared<PermutationLaw>(n);
  std::vector<unsigned> cyc(n);
  for (unsigned i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  std::vector<unsigned> tr(n);
  for (unsigned i = 0; i < n; ++i) tr[i] = i;
  if (n >= 2) std::swap(tr[0], tr[1]);
  return FiniteGroup::enumerate(law, {law->from_images(tr), law->from_images(cyc)}, cap);
}

Cocycle1 w_cocycle(const FiniteGroup& g, const PermutationModel& model, std::uint32_t t0) {
  if ((std::popcount(t0) & 1) == 0) throw ContractError("base subset of the torsor must be odd");
  Cocycle1 w = zero_cocycle(g);
  for (Index x = 0; x < g.order(); ++x) w.values[x] = model.encode(model.apply_perm(g.key(x), t0) ^ t0);
  return w;
}

CvsWReport c_vs_w(const PermutationModel& model, const FiniteGroup& g) {
  const ModuleAction act = model.action(g);
  const H1Result h = h1(g, act);
  CvsWReport r;
  r.h1_dim = h.dim();
  r.w_class = h.class_coords(w_cocycle(g, model, 1));
  r.c_class = class_of_c(h, g, act, model.space());
  r.equal = r.c_class == r.w_class;
  if (model.n() == 6) {
    r.witness_ok = true;
    for (std::uint32_t t = 0; t < (1U << model.n()); ++t) {
      if ((std::popcount(t) & 1) == 0) continue;
      if (!(c_cocycle(g, act, model.space(), model.q_T(t)) == w_cocycle(g, model, t))) r.witness_ok = false;
    }
  } else {
    r.witness_ok = c_cocycle(g, act, model.space(), model.q_T(0)) == zero_cocycle(g);
  }
  return r;
}

}  // namespace twistlab

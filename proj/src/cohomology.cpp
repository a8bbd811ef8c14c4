#include "twistlab/cohomology.hpp"

#include <random>

namespace twistlab {

Cocycle1 operator+(const Cocycle1& a, const Cocycle1& b) {
  if (a.values.size() != b.values.size()) throw ContractError("cocycle tables have different sizes");
  Cocycle1 c = a;
  for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] ^= b.values[i];
  return c;
}

Cocycle1 zero_cocycle(const FiniteGroup& g) { return Cocycle1{std::vector<std::uint32_t>(g.order(), 0)}; }

Cocycle1 coboundary(const FiniteGroup& g, const ModuleAction& act, std::uint32_t m) {
  Cocycle1 c = zero_cocycle(g);
  for (Index x = 0; x < g.order(); ++x) c.values[x] = act.apply(x, m) ^ m;
  return c;
}

Cocycle1 cocycle_from_generator_values(const FiniteGroup& g, const ModuleAction& act,
                                       const std::vector<std::uint32_t>& gen_values) {
  if (gen_values.size() != g.num_generators()) throw ContractError("one value per generator required");
  Cocycle1 c = zero_cocycle(g);
  for (Index x = 1; x < g.order(); ++x) {
    const Index p = g.parent(x);
    c.values[x] = c.values[p] ^ act.apply(p, gen_values[g.parent_gen(x)]);
  }
  return c;
}

bool is_cocycle_on_edges(const FiniteGroup& g, const ModuleAction& act, const Cocycle1& a) {
  if (a.values.size() != g.order() || a.values[0] != 0) return false;
  for (unsigned j = 0; j < g.num_generators(); ++j) {
    const std::uint32_t as = a.values[g.generator_index(j)];
    for (Index x = 0; x < g.order(); ++x)
      if (a.values[g.succ(x, j)] != (a.values[x] ^ act.apply(x, as))) return false;
  }
  return true;
}

bool is_cocycle_all_pairs(const FiniteGroup& g, const ModuleAction& act, const Cocycle1& a) {
  if (a.values.size() != g.order()) return false;
  for (Index x = 0; x < g.order(); ++x)
    for (Index y = 0; y < g.order(); ++y)
      if (a.values[g.mul(x, y)] != (a.values[x] ^ act.apply(x, a.values[y]))) return false;
  return true;
}

// ------------------------------------------------------------------------ H1

std::uint64_t H1Result::pack(const Cocycle1& a) const {
  std::uint64_t u = 0;
  for (unsigned j = 0; j < group_->num_generators(); ++j)
    u |= static_cast<std::uint64_t>(a.values[group_->generator_index(j)]) << (j * mdim_);
  return u;
}

std::uint64_t H1Result::class_coords(const Cocycle1& a) const {
  if (group_ == nullptr) throw ContractError("H1Result is not initialised");
  if (!is_cocycle_on_edges(*group_, *act_, a)) throw PreconditionError("argument is not a 1-cocycle");
  std::uint64_t tag = 0;
  if (classes_.reduce(pack(a), &tag) != 0) throw ContractError("cocycle outside the computed Z1");
  return tag;
}

H1Result h1(const FiniteGroup& g, const ModuleAction& act) {
  const unsigned k = g.num_generators();
  const unsigned d = act.dim();
  if (static_cast<std::size_t>(k) * d > 64)
    throw ContractError("h1 supports at most 64 generator unknowns (generators x module dimension)");
  const std::size_t n = g.order();
  // forms[x*d + r]: linear form in the unknowns giving coordinate r of a(x).
  std::vector<std::uint64_t> forms(n * d, 0);
  for (Index x = 1; x < n; ++x) {
    const Index p = g.parent(x);
    const unsigned j = g.parent_gen(x);
    const SmallMat mp = act.matrix(p);
    for (unsigned r = 0; r < d; ++r)
      forms[x * d + r] = forms[p * d + r] ^ (static_cast<std::uint64_t>(mp.row(r)) << (j * d));
  }
  Echelon64 cons;
  std::vector<std::uint64_t> rows;
  for (Index x = 0; x < n; ++x) {
    const SmallMat mx = act.matrix(x);
    for (unsigned j = 0; j < k; ++j) {
      const Index y = g.succ(x, j);
      for (unsigned r = 0; r < d; ++r) {
        const std::uint64_t c = forms[x * d + r] ^ (static_cast<std::uint64_t>(mx.row(r)) << (j * d)) ^ forms[y * d + r];
        if (cons.insert(c)) rows.push_back(c);
      }
    }
  }
  const std::vector<std::uint64_t> z1 = kernel64(rows, k * d);

  auto unpack = [&](std::uint64_t u) {
    std::vector<std::uint32_t> vals(k);
    for (unsigned j = 0; j < k; ++j) vals[j] = static_cast<std::uint32_t>((u >> (j * d)) & low_mask(d));
    return vals;
  };

  H1Result res;
  res.group_ = &g;
  res.act_ = &act;
  res.mdim_ = d;
  for (std::uint64_t u : z1) res.z1_basis.push_back(cocycle_from_generator_values(g, act, unpack(u)));
  for (unsigned i = 0; i < d; ++i) {
    std::uint64_t b = 0;
    for (unsigned j = 0; j < k; ++j) {
      const Index s = g.generator_index(j);
      b |= static_cast<std::uint64_t>(act.apply(s, 1U << i) ^ (1U << i)) << (j * d);
    }
    if (res.classes_.insert(b, 0)) ++res.dim_b1_;
  }
  for (std::size_t t = 0; t < z1.size(); ++t) {
    const unsigned pos = static_cast<unsigned>(res.h1_basis.size());
    if (res.classes_.insert(z1[t], 1ULL << pos)) res.h1_basis.push_back(res.z1_basis[t]);
  }
  return res;
}

bool restrict_to_cyclic_trivial(const ModuleAction& act, const Cocycle1& a, Index g) {
  const SmallMat m = act.matrix(g).plus_identity();
  Echelon64 img;
  for (unsigned c = 0; c < m.dim(); ++c) img.insert(m.column(c));
  return img.contains(a.values[g]);
}

// --------------------------------------------------------------- 2-cochains

TwoCochain cup_mu2(const FiniteGroup& g, const ModuleAction& act, const SmallMat& gram, const Cocycle1& a,
                   const Cocycle1& b) {
  (void)g;
  return [&act, gram, a, b](Index s, Index t) { return pairing(gram, a.values[s], act.apply(s, b.values[t])); };
}

bool is_two_cocycle(const FiniteGroup& g, const TwoCochain& eta, std::size_t exhaustive_limit, std::size_t samples) {
  const std::size_t n = g.order();
  auto check = [&](Index r, Index s, Index t) {
    return (eta(r, s) ^ eta(g.mul(r, s), t) ^ eta(r, g.mul(s, t)) ^ eta(s, t)) == 0;
  };
  if (n * n * n <= exhaustive_limit) {
    for (Index r = 0; r < n; ++r)
      for (Index s = 0; s < n; ++s) {
        const Index rs = g.mul(r, s);
        for (Index t = 0; t < n; ++t)
          if ((eta(r, s) ^ eta(rs, t) ^ eta(r, g.mul(s, t)) ^ eta(s, t)) != 0) return false;
      }
    return true;
  }
  std::mt19937_64 rng(0x2C0C1C1EULL);
  for (std::size_t i = 0; i < samples; ++i)
    if (!check(static_cast<Index>(rng() % n), static_cast<Index>(rng() % n), static_cast<Index>(rng() % n)))
      return false;
  return true;
}

bool coboundary_matches(const FiniteGroup& g, const Cochain1Mu2& gamma, const TwoCochain& eta, bool all_pairs) {
  const std::size_t n = g.order();
  if (all_pairs) {
    for (Index s = 0; s < n; ++s)
      for (Index t = 0; t < n; ++t)
        if ((gamma[s] ^ gamma[t] ^ gamma[g.mul(s, t)]) != eta(s, t)) return false;
    return true;
  }
  for (unsigned j = 0; j < g.num_generators(); ++j) {
    const Index s = g.generator_index(j);
    for (Index x = 0; x < n; ++x)
      if ((gamma[x] ^ gamma[s] ^ gamma[g.succ(x, j)]) != eta(x, s)) return false;
  }
  return true;
}

std::optional<Cochain1Mu2> coboundary_solve(const FiniteGroup& g, const TwoCochain& eta, bool check_cocycle) {
  if (check_cocycle && !is_two_cocycle(g, eta, 125000000, 200000))
    throw PreconditionError("coboundary_solve: input is not a 2-cocycle");
  const unsigned k = g.num_generators();
  if (k > 63) throw ContractError("coboundary_solve supports at most 63 generators");
  const std::uint64_t cst = 1ULL << k;  // constant term of an affine form
  const std::size_t n = g.order();
  std::vector<std::uint64_t> forms(n, 0);
  forms[0] = eta(0, 0) ? cst : 0;
  for (Index x = 1; x < n; ++x) {
    const Index p = g.parent(x);
    const unsigned j = g.parent_gen(x);
    forms[x] = forms[p] ^ (1ULL << j) ^ (eta(p, g.generator_index(j)) ? cst : 0);
  }
  // Affine rows: linear part in bits 0..k-1, right-hand side in bit k.
  Echelon64 cons;
  std::vector<std::uint64_t> rows;
  std::vector<std::uint8_t> rhs;
  for (unsigned j = 0; j < k; ++j) {
    const Index s = g.generator_index(j);
    for (Index x = 0; x < n; ++x) {
      const std::uint64_t r = forms[x] ^ forms[s] ^ forms[g.succ(x, j)] ^ (eta(x, s) ? cst : 0);
      if (r == 0) continue;
      if (cons.insert(r)) {
        rows.push_back(r & (cst - 1));
        rhs.push_back((r & cst) ? 1 : 0);
      }
    }
  }
  // gamma(s_j) appears in forms[s_j] as the unknown j plus constants, so every
  // row above is an equation among unknowns (constant moved to the right).
  const auto u = solve64(rows, rhs, k);
  if (!u) return std::nullopt;
  Cochain1Mu2 gamma;
  gamma.values.resize(n);
  const std::uint64_t full = *u | cst;
  for (Index x = 0; x < n; ++x) gamma.values[x] = parity(forms[x] & full);
  return gamma;
}

// ------------------------------------------------------------------------ psi

bool PsiTable::at(Index s) const {
  if (values[s] < 0) throw DomainError("psi is only defined where the element has no nonzero fixed vector");
  return values[s] == 1;
}

namespace {

// P with (s + 1) P = a(s); requires s - 1 invertible.
std::uint32_t solve_p(const ModuleAction& act, const Cocycle1& a, Index s) {
  const auto inv = act.matrix(s).plus_identity().inverse();
  if (!inv) throw DomainError("element has a nonzero fixed vector");
  return inv->apply(a.values[s]);
}

}  // namespace

PsiTable psi_table(const FiniteGroup& g, const ModuleAction& act, const SmallMat& gram, const Cocycle1& a,
                   const Cocycle1& b, const Cochain1Mu2& gamma) {
  if (!coboundary_matches(g, gamma, cup_mu2(g, act, gram, a, b), false))
    throw PreconditionError("psi_table: d gamma differs from a cup b");
  PsiTable t;
  t.values.assign(g.order(), -1);
  for (Index s = 0; s < g.order(); ++s) {
    if (act.matrix(s).fixed_dim() != 0) continue;
    const std::uint32_t p = solve_p(act, a, s);
    t.values[s] = static_cast<std::int8_t>(pairing(gram, p, b.values[s]) ^ gamma[s]);
  }
  return t;
}

SplittingCheck twisted_splitting_check(const FiniteGroup& g, const ModuleAction& act, const SmallMat& gram,
                                       const Cocycle1& a, const Cocycle1& b, const Cochain1Mu2& gamma, Index s) {
  const unsigned d = act.dim();
  if (d + 1 > kMaxSmallDim) throw ContractError("twisted module too large");
  if (act.matrix(s).fixed_dim() != 0) throw DomainError("element has a nonzero fixed vector");
  // Coordinates of V_a: bit 0 is the mu_2 part, bits 1..d carry V.
  auto twisted = [&](Index h) {
    const SmallMat m = act.matrix(h);
    SmallMat t(d + 1);
    // Row 0: l + e(a(h), h x) = l + <B a(h), h x> = l + <(h^T B a(h)), x>.
    const std::uint32_t w = gram.apply(a.values[h]);
    std::uint32_t row0 = 1;
    for (unsigned c = 0; c < d; ++c)
      if (parity(w & m.column(c))) row0 |= 1U << (c + 1);
    t.set_row(0, row0);
    for (unsigned r = 0; r < d; ++r) t.set_row(r + 1, m.row(r) << 1);
    return t;
  };
  SplittingCheck out;
  out.module_ok = twisted(0).is_identity();
  for (unsigned j = 0; j < g.num_generators() && out.module_ok; ++j) {
    const SmallMat ms = twisted(g.generator_index(j));
    for (Index x = 0; x < g.order(); ++x)
      if (!(twisted(x) * ms == twisted(g.succ(x, j)))) {
        out.module_ok = false;
        break;
      }
  }
  auto lift = [&](Index h) { return static_cast<std::uint32_t>(gamma[h]) | (b.values[h] << 1); };
  out.cocycle_ok = lift(0) == 0;
  for (unsigned j = 0; j < g.num_generators() && out.cocycle_ok; ++j) {
    const Index gs = g.generator_index(j);
    for (Index x = 0; x < g.order(); ++x)
      if (lift(g.succ(x, j)) != (lift(x) ^ twisted(x).apply(lift(gs)))) {
        out.cocycle_ok = false;
        break;
      }
  }
  // Retractions r(l, x) = l + phi(x); equivariance r(s v) = r(v) on a basis.
  const SmallMat ts = twisted(s);
  std::uint32_t found = 0;
  for (std::uint64_t phi = 0; phi < (1ULL << d); ++phi) {
    const std::uint32_t r = 1U | static_cast<std::uint32_t>(phi << 1);
    bool ok = true;
    for (unsigned c = 0; c <= d && ok; ++c) ok = parity(r & ts.apply(1U << c)) == parity(r & (1U << c));
    if (ok) {
      ++out.retractions;
      found = r;
    }
  }
  if (out.retractions == 1) out.value = parity(found & lift(s));
  return out;
}

}  // namespace twistlab

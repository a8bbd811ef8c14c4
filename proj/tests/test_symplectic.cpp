#include <map>
#include <memory>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/symplectic.hpp"

using namespace twistlab;

namespace {

ModuleAction natural_action(const FiniteGroup& g) {
  const auto& law = dynamic_cast<const MatrixLaw&>(g.law());
  return ModuleAction::from_function(g, law.dim(), [&law](Key k) { return law.matrix(k); });
}

}  // namespace

TEST_CASE("standard spaces") {
  const SymplecticSpace s = SymplecticSpace::standard(2);
  CHECK(s.dim() == 4);
  CHECK(s.gram().rank() == 4);
  CHECK(s.gram().transpose() == s.gram());
  for (unsigned i = 0; i < 4; ++i) CHECK_FALSE(s.gram().get(i, i));
  CHECK(s.e(1, 2));
  CHECK_FALSE(s.e(1, 4));
  CHECK_THROWS_AS(SymplecticSpace::standard(0), ContractError);
  CHECK_THROWS_AS(SymplecticSpace::standard(4), ContractError);
  for (unsigned d = 1; d <= 3; ++d) {
    const SymplecticSpace sd = SymplecticSpace::standard(d);
    const auto basis = sd.symplectic_basis();
    CHECK(basis.size() == d);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        CHECK(sd.e(basis[i].first, basis[j].second) == (i == j));
        CHECK_FALSE(sd.e(basis[i].first, basis[j].first));
        CHECK_FALSE(sd.e(basis[i].second, basis[j].second));
      }
  }
}

TEST_CASE("transvections") {
  const SymplecticSpace s = SymplecticSpace::standard(2);
  for (std::uint32_t v = 1; v < 16; ++v) {
    const SmallMat t = transvection(s, v);
    CHECK(s.preserves(t));
    CHECK((t * t).is_identity());
    CHECK(t.apply(v) == v);
    CHECK(t.plus_identity().rank() == 1);
  }
  CHECK_THROWS_AS(transvection(s, 0), ContractError);
}

TEST_CASE("Sp4 by transvection closure") {
  const SymplecticSpace s = SymplecticSpace::standard(2);
  const FiniteGroup sp = generate_sp(s, 10000);
  CHECK(sp.order() == 720);
  CHECK(sp.order() == sp_order_formula(2));
  CHECK(sp_order_formula(3) == 1451520);
  CHECK(sp_order_formula(1) == 6);
  const auto& law = dynamic_cast<const MatrixLaw&>(sp.law());
  for (Index x = 0; x < sp.order(); ++x) CHECK(s.preserves(law.matrix(sp.key(x))));
  CHECK_THROWS_AS(generate_sp(s, 100), CapacityError);
}

TEST_CASE("refinements and Arf") {
  const SymplecticSpace s = SymplecticSpace::standard(2);
  const auto qs = refinements(s);
  REQUIRE(qs.size() == 16);
  std::set<std::uint64_t> distinct;
  int arf0 = 0;
  for (const auto& q : qs) {
    distinct.insert(q.table());
    CHECK(arf(s, q) == arf_by_majority(s, q));
    arf0 += arf(s, q) ? 0 : 1;
  }
  CHECK(distinct.size() == 16);
  CHECK(arf0 == 10);
  // Torsor: each pair differs by exactly one linear form e(v, .).
  for (const auto& q : qs)
    for (const auto& r : qs) {
      int matches = 0;
      for (std::uint32_t v = 0; v < 16; ++v) {
        bool ok = true;
        for (std::uint32_t x = 0; x < 16; ++x) ok = ok && ((q(x) ^ r(x)) == s.e(v, x));
        matches += ok ? 1 : 0;
      }
      CHECK(matches == 1);
    }
  // Sp4-orbits: (g q)(x) = q(g^-1 x).
  const FiniteGroup sp = generate_sp(s, 10000);
  const auto& law = dynamic_cast<const MatrixLaw&>(sp.law());
  std::map<std::uint64_t, int> orbit_of;
  int orbits = 0;
  for (const auto& q : qs) {
    if (orbit_of.count(q.table()) != 0) continue;
    ++orbits;
    for (Index x = 0; x < sp.order(); ++x) {
      const SmallMat gi = law.matrix(sp.key(sp.inv(x)));
      std::uint64_t t = 0;
      for (std::uint32_t v = 0; v < 16; ++v)
        if (q(gi.apply(v))) t |= 1ULL << v;
      const QuadraticRefinement gq(s, t);
      CHECK(arf(s, gq) == arf(s, q));
      orbit_of[t] = orbits;
    }
  }
  CHECK(orbits == 2);
  // d = 3 counts: 2^{2d-1} +- 2^{d-1} = 36 and 28.
  const SymplecticSpace s3 = SymplecticSpace::standard(3);
  int a0 = 0;
  for (const auto& q : refinements(s3)) {
    CHECK(arf(s3, q) == arf_by_majority(s3, q));
    a0 += arf(s3, q) ? 0 : 1;
  }
  CHECK(a0 == 36);
}

TEST_CASE("Dickson parity on O(q) in dimension 4") {
  const SymplecticSpace s = SymplecticSpace::standard(2);
  const FiniteGroup sp = generate_sp(s, 10000);
  std::size_t weighted = 0;
  for (const auto& q : refinements(s)) {
    const auto o = oracle::orthogonal_group(sp, s, q);
    CHECK(o.size() == (arf(s, q) ? 120U : 72U));
    weighted += o.size() * (arf(s, q) ? 6U : 10U);
    std::size_t odd = 0;
    for (const SmallMat& g : o) odd += dickson_parity(s, g, q);
    CHECK(2 * odd == o.size());
    for (const SmallMat& g : o)
      for (const SmallMat& h : o)
        CHECK(dickson_parity(s, g * h, q) == (dickson_parity(s, g, q) ^ dickson_parity(s, h, q)));
    CHECK_FALSE(dickson_parity(s, SmallMat::identity(4), q));
    for (std::uint32_t v = 1; v < 16; ++v) {
      if (!q(v)) continue;
      const SmallMat t = transvection(s, v);
      CHECK(preserves_refinement(s, t, q));
      CHECK(dickson_parity(s, t, q));
      CHECK(t.fixed_dim() == 3);
    }
    for (std::uint32_t v = 1; v < 16; ++v)
      if (!q(v)) CHECK_THROWS_AS(dickson_parity(s, transvection(s, v), q), PreconditionError);
  }
  CHECK(weighted == 720U * 16U);
}

TEST_CASE("cocycle c_q") {
  const SymplecticSpace s = SymplecticSpace::standard(2);
  const FiniteGroup sp = generate_sp(s, 10000);
  const ModuleAction act = natural_action(sp);
  const H1Result h = h1(sp, act);
  CHECK(h.dim() == 1);
  const auto qs = refinements(s);
  const Cocycle1 c0 = c_cocycle(sp, act, s, qs[0]);
  CHECK(is_cocycle_on_edges(sp, act, c0));
  CHECK(h.class_coords(c0) != 0);
  for (const auto& q : qs) {
    const Cocycle1 c = c_cocycle(sp, act, s, q);
    CHECK(is_cocycle_on_edges(sp, act, c));
    for (Index g = 0; g < sp.order(); g += 7)
      for (std::uint32_t x = 0; x < 16; ++x) CHECK(s.e(c[g], x) == (q(act.apply(sp.inv(g), x)) ^ q(x)));
    CHECK(h.class_coords(c) == h.class_coords(c0));
    // q = q0 + e(v, .) gives c_q = c_q0 + coboundary(v).
    for (std::uint32_t v = 0; v < 16; ++v) {
      bool ok = true;
      for (std::uint32_t x = 0; x < 16; ++x) ok = ok && ((q(x) ^ qs[0](x)) == s.e(v, x));
      if (ok) CHECK(c == c0 + coboundary(sp, act, v));
    }
  }
  // A group inside O(q) has the zero cocycle.
  std::vector<Key> keys;
  for (const SmallMat& m : oracle::orthogonal_group(sp, s, qs[0])) keys.push_back(m.pack());
  const FiniteGroup o = FiniteGroup::enumerate_greedy(sp.law_ptr(), keys, 1000);
  const ModuleAction oa = natural_action(o);
  CHECK(c_cocycle(o, oa, s, qs[0]) == zero_cocycle(o));
}

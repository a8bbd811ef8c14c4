#include <bit>
#include <random>
#include <set>

#include "doctest.h"
#include "twistlab/hyperelliptic.hpp"

using namespace twistlab;

TEST_CASE("model construction") {
  const PermutationModel m6(6);
  CHECK(m6.dim() == 4);
  CHECK(PermutationModel(8).dim() == 6);
  CHECK_THROWS_AS(PermutationModel(7), ContractError);
  CHECK_THROWS_AS(PermutationModel(10), ContractError);
  CHECK(std::popcount(0b011U & 0b110U) == 1);  // e({1,2},{2,3})
  for (unsigned n : {6U, 8U}) {
    const PermutationModel m(n);
    const std::uint32_t all = (1U << n) - 1;
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
      if (std::popcount(s) & 1) continue;
      CHECK(m.encode(s) == m.encode(s ^ all));
      CHECK(m.space().e(m.encode(s), m.encode(s)) == false);
      for (std::uint32_t t = 0; t < (1U << n); t += 3) {
        if (std::popcount(t) & 1) continue;
        CHECK(m.space().e(m.encode(s), m.encode(t)) == static_cast<bool>(std::popcount(s & t) & 1));
      }
    }
    CHECK(m.encode(all) == 0);
    CHECK_THROWS_AS(m.encode(1), ContractError);
    CHECK(m.canonical(all ^ 1) == 1);
    CHECK(m.canonical(1) == 1);
    CHECK(m.canonical(0b110) == (all ^ 0b110));
    CHECK(m.canonical(0b101) == 0b101);
  }
  // q_{1} on {1,2}: 1 + 1 = 0.
  CHECK_FALSE(m6.q_T(1)(m6.encode(0b11)));
}

TEST_CASE("perm_to_sp is an injective symplectic homomorphism") {
  const PermutationModel m6(6);
  const FiniteGroup s6 = symmetric_group(6);
  const auto& law = dynamic_cast<const PermutationLaw&>(s6.law());
  CHECK(m6.perm_to_sp(law.identity()).is_identity());
  std::set<Key> image;
  for (Index x = 0; x < s6.order(); ++x) {
    const SmallMat a = m6.perm_to_sp(s6.key(x));
    CHECK(m6.space().preserves(a));
    image.insert(a.pack());
    for (unsigned j = 0; j < s6.num_generators(); ++j)
      CHECK(m6.perm_to_sp(s6.key(s6.succ(x, j))) == a * m6.perm_to_sp(s6.generators()[j]));
  }
  CHECK(image.size() == 720);
  // Every image matrix is symplectic and there are 720 of them, so the image is Sp4(F2).
  CHECK(image.size() == sp_order_formula(2));

  const PermutationModel m8(8);
  const FiniteGroup s8 = symmetric_group(8);
  std::set<Key> image8;
  std::mt19937_64 rng(8);
  for (Index x = 0; x < s8.order(); ++x) image8.insert(m8.perm_to_sp(s8.key(x)).pack());
  CHECK(image8.size() == 40320);
  CHECK(image8.size() < sp_order_formula(3));
  const auto& law8 = dynamic_cast<const PermutationLaw&>(s8.law());
  for (int t = 0; t < 10000; ++t) {
    const Key a = s8.key(static_cast<Index>(rng() % s8.order()));
    const Key b = s8.key(static_cast<Index>(rng() % s8.order()));
    CHECK(m8.perm_to_sp(law8.multiply(a, b)) == m8.perm_to_sp(a) * m8.perm_to_sp(b));
  }
}

TEST_CASE("q_T identifies odd subsets with refinements for n = 6") {
  const PermutationModel m6(6);
  std::set<std::uint64_t> tables;
  for (std::uint32_t t = 0; t < 64; ++t) {
    if ((std::popcount(t) & 1) == 0) continue;
    const QuadraticRefinement q = m6.q_T(t);
    CHECK(q.table() == m6.q_T(t ^ 63).table());
    tables.insert(q.table());
  }
  CHECK(tables.size() == 16);
  std::set<std::uint64_t> all;
  for (const auto& q : refinements(m6.space())) all.insert(q.table());
  CHECK(tables == all);
  CHECK_THROWS_AS(m6.q_T(0), ContractError);
  CHECK_NOTHROW(PermutationModel(8).q_T(0));
}

TEST_CASE("w cocycle") {
  const PermutationModel m6(6);
  const FiniteGroup s6 = symmetric_group(6);
  const ModuleAction act = m6.action(s6);
  const Cocycle1 w = w_cocycle(s6, m6, 1);
  CHECK(is_cocycle_on_edges(s6, act, w));
  const auto& law = dynamic_cast<const PermutationLaw&>(s6.law());
  CHECK(w[s6.index_of(law.parse("(1 2)"))] == m6.encode(0b11));
  const H1Result h = h1(s6, act);
  CHECK(h.dim() == 1);
  CHECK(h.class_coords(w) == 1);
  for (std::uint32_t t = 1; t < 64; ++t) {
    if ((std::popcount(t) & 1) == 0) continue;
    CHECK(h.class_coords(w_cocycle(s6, m6, t)) == 1);
  }
  const FiniteGroup triv = FiniteGroup::enumerate(s6.law_ptr(), {}, 1);
  const ModuleAction ta = m6.action(triv);
  CHECK(h1(triv, ta).dim() == 0);
  CHECK(w_cocycle(triv, m6, 1) == zero_cocycle(triv));
}

TEST_CASE("c versus w") {
  const PermutationModel m6(6);
  const FiniteGroup s6 = symmetric_group(6);
  const CvsWReport r6 = c_vs_w(m6, s6);
  CHECK(r6.h1_dim == 1);
  CHECK(r6.c_class != 0);
  CHECK(r6.equal);
  CHECK(r6.witness_ok);

  const PermutationModel m8(8);
  const FiniteGroup s8 = symmetric_group(8);
  const CvsWReport r8 = c_vs_w(m8, s8);
  CHECK(r8.h1_dim == 1);
  CHECK(r8.c_class == 0);
  CHECK(r8.w_class != 0);
  CHECK(r8.witness_ok);

  const ModuleAction act8 = m8.action(s8);
  const auto& law8 = dynamic_cast<const PermutationLaw&>(s8.law());
  const Index g = s8.index_of(law8.parse("(1 3 5 7)(2 4 6 8)"));
  CHECK(act8.matrix(g).fixed_dim() == 2);
  CHECK_FALSE(restrict_to_cyclic_trivial(act8, w_cocycle(s8, m8, 1), g));
}

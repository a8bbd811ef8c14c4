#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/hyperelliptic.hpp"

using namespace twistlab;

TEST_CASE("h1 small cases") {
  const PermutationModel m6(6);
  const FiniteGroup triv = FiniteGroup::enumerate(std::make_shared<PermutationLaw>(6), {}, 1);
  CHECK(h1(triv, m6.action(triv)).dim() == 0);
  const FiniteGroup s6 = symmetric_group(6);
  CHECK(h1(s6, m6.action(s6)).dim() == 1);
  // C2 on F2^2 by swapping: H1 = 0; C2 acting trivially on F2: H1 = F2.
  auto law = std::make_shared<PermutationLaw>(2);
  const FiniteGroup c2 = FiniteGroup::enumerate(law, law->parse_list("(1 2)"), 2);
  const ModuleAction swap = ModuleAction::from_generators(c2, {SmallMat::from_columns(std::vector<std::uint32_t>{2, 1})});
  CHECK(h1(c2, swap).dim() == 0);
  const ModuleAction triv1 = ModuleAction::from_generators(c2, {SmallMat::identity(1)});
  CHECK(h1(c2, triv1).dim() == 1);
}

TEST_CASE("h1 agrees with the full linear system") {
  auto inst = oracle::s6_subgroup_instances(12);
  REQUIRE(inst.size() >= 10);
  for (auto& [g, act] : inst) {
    const H1Result h = h1(g, act);
    const auto full = oracle::z1_full_system(g, act);
    CHECK(full.size() == h.dim_z1());
    CHECK(oracle::b1_dim_oracle(g, act) == h.dim_b1());
    CHECK(h.dim() == h.dim_z1() - h.dim_b1());
    // Same space: the union has the same rank.
    std::vector<Cocycle1> both = full;
    both.insert(both.end(), h.z1_basis.begin(), h.z1_basis.end());
    CHECK(oracle::table_rank(both, act.dim()) == full.size());
    g.build_table();
    for (const Cocycle1& z : h.z1_basis) CHECK(is_cocycle_all_pairs(g, act, z));
  }
}

TEST_CASE("class coordinates and restriction") {
  const PermutationModel m6(6);
  FiniteGroup s6 = symmetric_group(6);
  const ModuleAction act = m6.action(s6);
  const H1Result h = h1(s6, act);
  for (std::uint32_t m = 0; m < 16; ++m) {
    const Cocycle1 b = coboundary(s6, act, m);
    CHECK(h.is_coboundary(b));
    for (Index g = 0; g < s6.order(); ++g) CHECK(restrict_to_cyclic_trivial(act, b, g));
  }
  Cocycle1 bad = zero_cocycle(s6);
  bad.values[1] = 1;
  CHECK_THROWS_AS((void)h.class_coords(bad), PreconditionError);
  const Cocycle1 w = w_cocycle(s6, m6, 1);
  for (Index g = 0; g < s6.order(); ++g)
    if (act.matrix(g).fixed_dim() == 0) CHECK(restrict_to_cyclic_trivial(act, w, g));
  // Class function: restriction depends only on the class of the cocycle.
  const Cocycle1 w2 = w + coboundary(s6, act, 5);
  for (Index g = 0; g < s6.order(); ++g)
    CHECK(restrict_to_cyclic_trivial(act, w, g) == restrict_to_cyclic_trivial(act, w2, g));
}

TEST_CASE("cup products and coboundary solving") {
  const PermutationModel m6(6);
  FiniteGroup s6 = symmetric_group(6);
  s6.build_table();
  const ModuleAction act = m6.action(s6);
  const SmallMat& gram = m6.space().gram();
  const H1Result h = h1(s6, act);
  std::mt19937_64 rng(42);

  const Cocycle1 w = w_cocycle(s6, m6, 1);
  const Cocycle1 a = w + coboundary(s6, act, 3);
  const Cocycle1 a2 = coboundary(s6, act, 6);
  const Cocycle1 b = w + coboundary(s6, act, 9);
  const auto lhs = cup_mu2(s6, act, gram, a + a2, b);
  const auto r1 = cup_mu2(s6, act, gram, a, b);
  const auto r2 = cup_mu2(s6, act, gram, a2, b);
  for (int t = 0; t < 20000; ++t) {
    const Index x = static_cast<Index>(rng() % 720);
    const Index y = static_cast<Index>(rng() % 720);
    CHECK(lhs(x, y) == (r1(x, y) ^ r2(x, y)));
  }
  CHECK(is_two_cocycle(s6, r1, 0, 100000));

  // Cup with a coboundary is a coboundary.
  CHECK(coboundary_solve(s6, cup_mu2(s6, act, gram, a2, b)).has_value());
  CHECK(coboundary_solve(s6, cup_mu2(s6, act, gram, b, a2)).has_value());

  // Round trip for a random gamma0.
  Cochain1Mu2 g0;
  g0.values.resize(720);
  for (auto& v : g0.values) v = rng() & 1U;
  const TwoCochain eta = [&](Index x, Index y) { return static_cast<bool>(g0[x] ^ g0[y] ^ g0[s6.mul(x, y)]); };
  const auto sol = coboundary_solve(s6, eta);
  REQUIRE(sol.has_value());
  CHECK(coboundary_matches(s6, *sol, eta, true));

  // Non-cocycle input is rejected.
  const TwoCochain junk = [](Index x, Index y) { return x == 1 && y == 2; };
  CHECK_THROWS_AS(coboundary_solve(s6, junk), PreconditionError);
}

TEST_CASE("coboundary_solve agrees with the full system") {
  auto inst = oracle::s6_subgroup_instances(14);
  std::mt19937_64 rng(17);
  const PermutationModel m6(6);
  int solvable = 0;
  int unsolvable = 0;
  for (auto& [g, act] : inst) {
    if (g.order() > 500) continue;
    g.build_table();
    const H1Result h = h1(g, act);
    for (int t = 0; t < 3; ++t) {
      const Cocycle1 a = oracle::random_combination(h.z1_basis, g, rng);
      const Cocycle1 b = oracle::random_combination(h.z1_basis, g, rng);
      const auto eta = cup_mu2(g, act, m6.space().gram(), a, b);
      const auto fast = coboundary_solve(g, eta);
      const auto full = oracle::coboundary_full_system(g, eta);
      CHECK(fast.has_value() == full.has_value());
      if (fast) {
        CHECK(coboundary_matches(g, *fast, eta, true));
        ++solvable;
      } else {
        ++unsolvable;
      }
    }
  }
  // Cups of characters give nontrivial classes as well.
  for (auto& [g, act] : inst) {
    if (g.order() > 500) continue;
    const auto chars = homs_to_mu2(g);
    for (const auto& c1 : chars)
      for (const auto& c2 : chars) {
        const TwoCochain eta = [&c1, &c2](Index x, Index y) { return static_cast<bool>(c1[x] & c2[y]); };
        const auto fast = coboundary_solve(g, eta);
        const auto full = oracle::coboundary_full_system(g, eta);
        CHECK(fast.has_value() == full.has_value());
        if (fast) {
          CHECK(coboundary_matches(g, *fast, eta, true));
          ++solvable;
        } else {
          ++unsolvable;
        }
      }
  }
  CHECK(solvable > 0);
  CHECK(unsolvable > 0);
  MESSAGE("cup classes: " << solvable << " trivial, " << unsolvable << " nontrivial");
}

TEST_CASE("psi and the twisted splitting") {
  const PermutationModel m6(6);
  FiniteGroup s6 = symmetric_group(6);
  s6.build_table();
  const ModuleAction act = m6.action(s6);
  const SmallMat& gram = m6.space().gram();
  const ConjugacyClasses cc = conjugacy_classes(s6);
  const auto chars = homs_to_mu2(s6);

  Cochain1Mu2 zero;
  zero.values.assign(720, 0);
  const Cocycle1 z = zero_cocycle(s6);
  const PsiTable p0 = psi_table(s6, act, gram, z, z, zero);
  for (Index s = 0; s < 720; ++s)
    if (p0.defined(s)) CHECK_FALSE(p0.at(s));
  CHECK_THROWS_AS((void)p0.at(0), DomainError);

  std::mt19937_64 rng(99);
  const Cocycle1 w = w_cocycle(s6, m6, 1);
  int instances = 0;
  for (int t = 0; t < 12; ++t) {
    const Cocycle1 a = (t % 3 == 0 ? z : w) + coboundary(s6, act, static_cast<std::uint32_t>(rng() % 16));
    const Cocycle1 b = (t % 2 == 0 ? z : w) + coboundary(s6, act, static_cast<std::uint32_t>(rng() % 16));
    const auto eta = cup_mu2(s6, act, gram, a, b);
    const auto gamma = coboundary_solve(s6, eta, false);
    if (!gamma) continue;
    ++instances;
    const PsiTable psi = psi_table(s6, act, gram, a, b, *gamma);
    for (Index s = 0; s < 720; ++s) {
      if (!psi.defined(s)) continue;
      const std::size_t c = cc.class_of[s];
      CHECK(psi.at(s) == psi.at(cc.rep(c)));
      const SplittingCheck sc = twisted_splitting_check(s6, act, gram, a, b, *gamma, s);
      CHECK(sc.module_ok);
      CHECK(sc.cocycle_ok);
      CHECK(sc.retractions == 1);
      CHECK(sc.value == psi.at(s));
    }
    // Shifting gamma by a character shifts psi by it.
    for (const auto& chi : chars) {
      Cochain1Mu2 g2 = *gamma;
      for (Index x = 0; x < 720; ++x) g2.values[x] ^= chi[x];
      const PsiTable psi2 = psi_table(s6, act, gram, a, b, g2);
      for (Index s = 0; s < 720; ++s)
        if (psi.defined(s)) CHECK(psi2.at(s) == (psi.at(s) ^ static_cast<bool>(chi[s])));
    }
  }
  CHECK(instances >= 4);
  // a = 0: the retraction is the first projection.
  Index s6cycle = 0;
  while (act.matrix(s6cycle).fixed_dim() != 0) ++s6cycle;
  const SplittingCheck first = twisted_splitting_check(s6, act, gram, z, w, zero, s6cycle);
  CHECK(first.retractions == 1);
  CHECK(first.value == false);
  CHECK_THROWS_AS(twisted_splitting_check(s6, act, gram, z, w, zero, 0), DomainError);
  // A gamma that does not bound the cup is rejected.
  if (!coboundary_solve(s6, cup_mu2(s6, act, gram, w, w), false)) {
    CHECK_THROWS_AS(psi_table(s6, act, gram, w, w, zero), PreconditionError);
  }
}

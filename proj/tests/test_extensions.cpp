#include <random>

#include "doctest.h"
#include "twistlab/assumptions.hpp"
#include "twistlab/extensions.hpp"
#include "twistlab/hyperelliptic.hpp"

using namespace twistlab;

namespace {

struct S6Setup {
  PermutationModel model{6};
  FiniteGroup s6 = symmetric_group(6);
  ModuleAction act = model.action(s6);
  Cocycle1 w = w_cocycle(s6, model, 1);
};

std::vector<Index> fixed_point_free(const FiniteGroup& g, const ModuleAction& act) {
  std::vector<Index> out;
  for (Index x = 0; x < g.order(); ++x)
    if (act.matrix(x).fixed_dim() == 0) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("Gamma construction") {
  S6Setup st;
  const SemidirectGamma gm(st.s6, st.act, 1);
  CHECK(gm.order() == 11520);
  CHECK(gm.group().order() == 11520);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5000; ++t) {
    const Index x = static_cast<Index>(rng() % gm.order());
    const Index y = static_cast<Index>(rng() % gm.order());
    const Index xy = gm.mul(x, y);
    // Projection is a homomorphism and f_1 obeys the cocycle law.
    CHECK(gm.base_index(xy) == st.s6.mul(gm.base_index(x), gm.base_index(y)));
    CHECK(gm.coord(xy, 0) == (gm.coord(x, 0) ^ gm.act(gm.base_index(x), gm.coord(y, 0))));
    CHECK(gm.mul(x, gm.inv(x)) == 0);
  }
  // Kernel of the projection is V.
  std::size_t kernel = 0;
  for (Index x = 0; x < gm.order(); ++x) kernel += gm.base_index(x) == 0;
  CHECK(kernel == 16);
  CHECK_THROWS_AS(SemidirectGamma(st.s6, st.act, 2, 100000), CapacityError);
}

TEST_CASE("E for n = 1, m = 1") {
  S6Setup st;
  const SemidirectGamma gm(st.s6, st.act, 1);
  const CentralExtE e(gm, st.model.space().gram(), {st.w});
  CHECK(e.num_components() == 1);
  CHECK(e.order() == 23040);
  CHECK(e.group().order() == 23040);
  const AssocReport as = check_associativity(e);
  CHECK(as.exhaustive);
  CHECK(as.associative);
  CHECK(check_gamma_coboundaries(e));
  CHECK(check_kernel_central(e));
  CHECK(is_two_cocycle(gm.group(), [&](Index x, Index y) {
    return e.eta(static_cast<Index>(gm.group().key(x)), static_cast<Index>(gm.group().key(y))) != 0;
  }, 0, 200000));

  const HomsFactorReport hf = homs_factor_check(e);
  CHECK(hf.factors);
  CHECK(hf.num_characters == 2);

  // Patterns over every fixed-point-free g: the full cube, evenly.
  const auto fpf = fixed_point_free(st.s6, st.act);
  CHECK(!fpf.empty());
  for (Index g : fpf) {
    const auto pats = realized_sign_patterns(e, g);
    CHECK(pats.size() == 2);
    for (const auto& [p, count] : pats) CHECK(count == 16);
  }
  CHECK_THROWS_AS(realized_sign_patterns(e, 0), DomainError);

  // The patterns agree with psi_table of the cohomology module on E.
  const FiniteGroup& eg = e.group();
  const Cocycle1 a1 = e.a_cocycle(1);
  const Cocycle1 a0 = e.a_cocycle(0);
  const PsiTable psi = psi_table(eg, e.action(), e.gram(), a1, a0, e.gamma_cochain(0));
  const Index g0 = fpf.front();
  std::map<std::uint64_t, std::size_t> from_psi;
  for (Index x = 0; x < eg.order(); ++x) {
    if (gm.base_index(CentralExtE::gamma_of(eg.key(x))) != g0) continue;
    REQUIRE(psi.defined(x));
    ++from_psi[psi.at(x) ? 1 : 0];
  }
  CHECK(from_psi == realized_sign_patterns(e, g0));
  // psi is constant on conjugacy classes of E.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 3000; ++t) {
    const Index x = static_cast<Index>(rng() % eg.order());
    const Index y = static_cast<Index>(rng() % eg.order());
    if (!psi.defined(x)) continue;
    const Index c = eg.index_of(e.mul(e.mul(eg.key(y), eg.key(x)), e.inv(eg.key(y))));
    CHECK(psi.at(c) == psi.at(x));
  }
  // Conjugating g leaves the pattern set unchanged.
  const Index g1 = st.s6.conj(5, g0);
  CHECK(realized_sign_patterns(e, g1) == realized_sign_patterns(e, g0));
}

TEST_CASE("corrupted and split controls") {
  S6Setup st;
  const SemidirectGamma gm(st.s6, st.act, 1);
  const Index x0 = gm.pack(3, 7);
  const Index y0 = gm.pack(5, 11);
  const CentralExtE bad(gm, st.model.space().gram(), {st.w}, kDefaultECap, EtaOverride{false, x0, y0, 1});
  const AssocReport as = check_associativity(bad);
  CHECK_FALSE(as.associative);
  REQUIRE(as.witness.has_value());
  const auto [p, q, r] = *as.witness;
  CHECK(bad.mul(bad.mul(p, q), r) != bad.mul(p, bad.mul(q, r)));
  // The same triple violates the 2-cocycle identity.
  const Index x = CentralExtE::gamma_of(p);
  const Index s = CentralExtE::gamma_of(q);
  const Index y = CentralExtE::gamma_of(r);
  CHECK((bad.eta(x, s) ^ bad.eta(gm.mul(x, s), y) ^ bad.eta(x, gm.mul(s, y)) ^ bad.eta(s, y)) != 0);

  // eta = 0: E is a direct product and the central characters survive.
  const CentralExtE split(gm, st.model.space().gram(), {st.w}, kDefaultECap, EtaOverride{true, 0, 0, 0});
  CHECK(check_associativity(split).associative);
  const HomsFactorReport hf = homs_factor_check(split);
  CHECK_FALSE(hf.factors);
  CHECK(hf.num_characters == 4);
}

TEST_CASE("A6 analogue has only the trivial character") {
  const PermutationModel model(6);
  const FiniteGroup s6 = symmetric_group(6);
  const auto& law = dynamic_cast<const PermutationLaw&>(s6.law());
  const FiniteGroup a6 = FiniteGroup::enumerate(s6.law_ptr(), law.parse_list("(1 2 3),(2 3 4 5 6)"), 720);
  REQUIRE(a6.order() == 360);
  const ModuleAction act = model.action(a6);
  const SemidirectGamma gm(a6, act, 1);
  const CentralExtE e(gm, model.space().gram(), {});
  const HomsFactorReport hf = homs_factor_check(e);
  CHECK(hf.num_characters == 1);
  CHECK(hf.factors);
}

TEST_CASE("E for n = 2, m = 0") {
  S6Setup st;
  const SemidirectGamma gm(st.s6, st.act, 2);
  CHECK(gm.order() == 184320);
  const CentralExtE e(gm, st.model.space().gram(), {});
  CHECK(e.order() == 368640);
  const AssocReport as = check_associativity(e, 50000, 300000);
  CHECK_FALSE(as.exhaustive);
  CHECK(as.associative);
  CHECK(check_gamma_coboundaries(e));
  CHECK(check_kernel_central(e));
  CHECK(homs_factor_check(e).factors);
  CHECK(commutator_is_polarization(e));
  // q_12(v) = e(v_1, v_2).
  const auto q = quad_form_table(e, 0);
  for (std::uint32_t v = 0; v < 256; ++v) CHECK(q[v] == st.model.space().e(v & 15U, v >> 4));
  int checked = 0;
  for (Index g : fixed_point_free(st.s6, st.act)) {
    if (++checked > 40) break;
    const auto pats = realized_sign_patterns(e, g);
    CHECK(pats.size() == 2);
    for (const auto& [p, count] : pats) CHECK(count == 256);
  }
}

TEST_CASE("E for n = 1, m = 0 is Gamma") {
  S6Setup st;
  const SemidirectGamma gm(st.s6, st.act, 1);
  const CentralExtE e(gm, st.model.space().gram(), {});
  CHECK(e.order() == 11520);
  CHECK(check_associativity(e).associative);
  for (Index g : fixed_point_free(st.s6, st.act)) {
    const auto pats = realized_sign_patterns(e, g);
    REQUIRE(pats.size() == 1);
    CHECK(pats.begin()->second == 16);
  }
}

TEST_CASE("trivializing locus") {
  S6Setup st;
  const SemidirectGamma gm(st.s6, st.act, 1);
  const TrivializingLocus t = trivializing_locus(gm);
  CHECK(t.agree);
  CHECK(t.in_locus[0] == 1);
  // (v, 1) with v != 0 is outside the locus.
  for (std::uint32_t v = 1; v < 16; ++v) CHECK(t.in_locus[gm.group().index_of(gm.pack(v, 0))] == 0);
  CHECK(t.nontrivial_characters == 1);
  CHECK(t.characters_nonconstant);
  const auto& law = dynamic_cast<const PermutationLaw&>(st.s6.law());
  const FiniteGroup c2 = FiniteGroup::enumerate(st.s6.law_ptr(), law.parse_list("(1 2)"), 2);
  const ModuleAction a2 = st.model.action(c2);
  const SemidirectGamma g2(c2, a2, 1);
  CHECK_THROWS_AS(trivializing_locus(g2), PreconditionError);
}

TEST_CASE("cup independence") {
  CHECK(quad_forms_independent(SymplecticSpace::standard(2), 2));
  for (unsigned d = 2; d <= 3; ++d)
    for (unsigned n = 1; n <= 3; ++n) {
      CHECK(quad_forms_independent(SymplecticSpace::standard(d), n));
      CHECK(cup_independence_check(d, n, 0).ok());
    }
  CHECK(cup_independence_check(2, 1, 1).ok());
  CHECK(cup_independence_check(3, 2, 1).ok());
  // H1 is one-dimensional, so two classes are dependent.
  CHECK_FALSE(cup_independence_check(2, 1, 2).classes_independent);
  CHECK_FALSE(cup_independence_check(1, 1, 1).classes_independent);
}

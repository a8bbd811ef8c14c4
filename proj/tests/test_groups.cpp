#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "twistlab/groups.hpp"

using namespace twistlab;

namespace {

std::shared_ptr<PermutationLaw> perm(unsigned n) { return std::make_shared<PermutationLaw>(n); }

FiniteGroup sym(unsigned n) {
  auto law = perm(n);
  std::string cyc = "(";
  for (unsigned i = 1; i <= n; ++i) cyc += std::to_string(i) + (i < n ? " " : ")");
  return FiniteGroup::enumerate(law, law->parse_list("(1 2)," + cyc), 100000);
}

FiniteGroup alt6() {
  auto law = perm(6);
  return FiniteGroup::enumerate(law, law->parse_list("(1 2 3),(2 3 4 5 6)"), 1000);
}

unsigned count_partitions(unsigned n, unsigned max_part) {
  if (n == 0) return 1;
  unsigned c = 0;
  for (unsigned p = 1; p <= std::min(n, max_part); ++p) c += count_partitions(n - p, p);
  return c;
}

// F2-abelianization dimension through the subgroup generated by commutators
// and squares: |G / N| = 2^dim.
unsigned ab_dim_oracle(FiniteGroup& g) {
  g.build_table();
  std::vector<Index> gens;
  for (Index x = 0; x < g.order(); ++x) {
    gens.push_back(g.mul(x, x));
    for (Index y = 0; y < g.order(); ++y) gens.push_back(g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y))));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<bool> in(g.order(), false);
  std::vector<Index> elems{0};
  in[0] = true;
  for (std::size_t h = 0; h < elems.size(); ++h)
    for (Index s : gens) {
      const Index y = g.mul(elems[h], s);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  std::size_t q = g.order() / elems.size();
  unsigned d = 0;
  while ((1U << d) < q) ++d;
  return d;
}

}  // namespace

TEST_CASE("enumeration orders and capacity") {
  CHECK(sym(6).order() == 720);
  auto law = perm(6);
  CHECK(FiniteGroup::enumerate(law, {}, 10).order() == 1);
  CHECK(alt6().order() == 360);
  try {
    sym(6);
    FiniteGroup::enumerate(law, law->parse_list("(1 2),(1 2 3 4 5 6)"), 100);
    FAIL("expected capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.cap() == 100);
    CHECK(std::string(e.what()).find("100") != std::string::npos);
  }
}

TEST_CASE("parsing and formatting") {
  auto law = perm(6);
  const Key k = law->parse("(1 2)(3 4 5)");
  CHECK(law->format(k) == "(1 2)(3 4 5)");
  CHECK(law->parse("()") == law->identity());
  CHECK(law->parse_list("(1 2),(1 2 3 4 5 6)").size() == 2);
  // (1 2)(2 3): right factor first, so 1 -> 1 -> 2, 2 -> 3, 3 -> 2 -> 1.
  CHECK(law->format(law->parse("(1 2)(2 3)")) == "(1 2 3)");
  CHECK_THROWS_AS(law->parse("(1 7)"), ContractError);
  CHECK_THROWS_AS(law->parse("(1 1)"), ContractError);
  auto ml = std::make_shared<MatrixLaw>(3);
  const auto mats = ml->parse_list("[110 010 001],[100 110 001]");
  REQUIRE(mats.size() == 2);
  CHECK(ml->format(mats[0]) == "[110 010 001]");
  CHECK_THROWS_AS(ml->parse("[110 110 001]"), ContractError);
  const FiniteGroup g = FiniteGroup::enumerate(ml, mats, 1000);
  CHECK(g.order() == 6);
}

TEST_CASE("Cayley tables, inverses and associativity") {
  FiniteGroup g = sym(5);
  for (unsigned j = 0; j < g.num_generators(); ++j) {
    std::vector<bool> hit(g.order(), false);
    for (Index x = 0; x < g.order(); ++x) {
      CHECK_FALSE(hit[g.succ(x, j)]);
      hit[g.succ(x, j)] = true;
    }
  }
  g.build_table();
  for (Index x = 0; x < g.order(); ++x) {
    CHECK(g.mul(x, g.inv(x)) == 0);
    if (x != 0) CHECK(g.succ(g.parent(x), g.parent_gen(x)) == x);
  }
  std::vector<Index> gens;
  for (unsigned j = 0; j < g.num_generators(); ++j) gens.push_back(g.generator_index(j));
  CHECK(light_associativity(g.order(), 0, gens, [&](Index a, Index b) { return g.mul(a, b); }));
  // Triple-exhaustive oracle on a smaller group.
  FiniteGroup s4 = sym(4);
  s4.build_table();
  bool all = true;
  for (Index a = 0; a < s4.order(); ++a)
    for (Index b = 0; b < s4.order(); ++b)
      for (Index c = 0; c < s4.order(); ++c)
        all = all && s4.mul(s4.mul(a, b), c) == s4.mul(a, s4.mul(b, c));
  CHECK(all);
  // A non-associative magma is rejected: x*y = x - y mod 5 has no identity, and
  // twisting one product of Z/5 breaks associativity.
  auto broken = [](Index a, Index b) -> Index {
    if (a == 1 && b == 1) return 3;
    return (a + b) % 5;
  };
  CHECK_FALSE(light_associativity(5, 0, {1}, broken));
  CHECK(light_associativity(5, 0, {1}, [](Index a, Index b) -> Index { return (a + b) % 5; }));
}

TEST_CASE("conjugacy classes") {
  auto law = perm(6);
  CHECK(conjugacy_classes(FiniteGroup::enumerate(law, {}, 1)).count() == 1);
  FiniteGroup s6 = sym(6);
  const ConjugacyClasses cc = conjugacy_classes(s6);
  CHECK(cc.count() == count_partitions(6, 6));
  CHECK(cc.count() == 11);
  std::size_t total = 0;
  for (std::size_t c = 0; c < cc.count(); ++c) {
    total += cc.classes[c].size();
    for (Index x : cc.classes[c]) CHECK(s6.conj(cc.witness[x], cc.rep(c)) == x);
  }
  CHECK(total == 720);
  CHECK(conjugacy_classes(sym(5)).count() == count_partitions(5, 5));
}

TEST_CASE("characters to mu_2") {
  auto law = perm(2);
  FiniteGroup c2 = FiniteGroup::enumerate(law, law->parse_list("(1 2)"), 10);
  CHECK(abelianization_f2_dim(c2) == 1);
  FiniteGroup a6 = alt6();
  CHECK(abelianization_f2_dim(a6) == 0);
  CHECK(ab_dim_oracle(a6) == 0);
  FiniteGroup s6 = sym(6);
  CHECK(abelianization_f2_dim(s6) == 1);
  CHECK(ab_dim_oracle(s6) == 1);
  auto law4 = perm(4);
  FiniteGroup v4 = FiniteGroup::enumerate(law4, law4->parse_list("(1 2),(3 4),(1 2)(3 4)"), 10);
  CHECK(abelianization_f2_dim(v4) == 2);
  CHECK(ab_dim_oracle(v4) == 2);
  FiniteGroup d4 = FiniteGroup::enumerate(law4, law4->parse_list("(1 2 3 4),(1 3)"), 10);
  CHECK(abelianization_f2_dim(d4) == ab_dim_oracle(d4));
  const auto chars = homs_to_mu2(s6);
  REQUIRE(chars.size() == 2);
  s6.build_table();
  for (const auto& chi : chars)
    for (Index x = 0; x < s6.order(); ++x)
      for (unsigned j = 0; j < s6.num_generators(); ++j)
        CHECK((chi[x] ^ chi[s6.generator_index(j)]) == chi[s6.succ(x, j)]);
}

TEST_CASE("subgroup classes agree with brute force") {
  for (unsigned n : {3U, 4U}) {
    FiniteGroup g = sym(n);
    const auto classes = subgroups_up_to_conjugacy(g);
    const auto brute = oracle::brute_subgroups(g);
    std::size_t total = 0;
    for (const auto& c : classes) total += c.class_size;
    CHECK(total == brute.size());
    // Partition the brute-force list into conjugacy orbits.
    std::set<std::vector<Index>> left = brute;
    std::size_t orbits = 0;
    while (!left.empty()) {
      const std::vector<Index> h = *left.begin();
      for (Index t = 0; t < g.order(); ++t) left.erase(oracle::conjugate_set(g, h, t));
      ++orbits;
    }
    CHECK(orbits == classes.size());
    for (const auto& c : classes) CHECK(brute.count(c.elements) == 1);
    if (n == 3) {
      CHECK(classes.size() == 4);
      std::vector<std::size_t> orders;
      for (const auto& c : classes) orders.push_back(c.order());
      CHECK(orders == std::vector<std::size_t>{1, 2, 3, 6});
    } else {
      CHECK(classes.size() == 11);
      CHECK(total == 30);
    }
  }
}

TEST_CASE("S6 subgroup classes are closed and conjugation stable") {
  FiniteGroup g = sym(6);
  const auto classes = subgroups_up_to_conjugacy(g);
  std::size_t total = 0;
  for (const auto& c : classes) total += c.class_size;
  CHECK(classes.size() == 56);
  CHECK(total == 1455);
  std::mt19937_64 rng(2024);
  std::map<std::vector<Index>, std::size_t> which;
  for (std::size_t i = 0; i < classes.size(); ++i) which[classes[i].elements] = i;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& h = classes[i].elements;
    std::vector<bool> in(g.order(), false);
    for (Index x : h) in[x] = true;
    for (Index a : h)
      for (Index b : h) REQUIRE(in[g.mul(a, b)]);
    for (int t = 0; t < 20; ++t) {
      const Index s = static_cast<Index>(rng() % g.order());
      const auto c = oracle::conjugate_set(g, h, s);
      // The conjugate is conjugate to the representative and to no other one.
      bool found = false;
      for (Index u = 0; u < g.order() && !found; ++u) found = oracle::conjugate_set(g, c, u) == h;
      CHECK(found);
      if (which.count(c) != 0) CHECK(which[c] == i);
    }
  }
}

TEST_CASE("transitivity and fingerprints") {
  auto law = perm(6);
  CHECK(is_transitive(*law, law->parse_list("(1 2 3 4 5 6)")));
  CHECK_FALSE(is_transitive(*law, law->parse_list("(1 2 3 4 5)")));
  const Fingerprint f = fingerprint(sym(6));
  CHECK(f.order == 720);
  CHECK(f.exponent == 60);
  CHECK(f.class_sizes.size() == 11);
  CHECK(f.ab_dim == 1);
  CHECK_FALSE(f == fingerprint(alt6()));
}

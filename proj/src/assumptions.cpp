#include "twistlab/assumptions.hpp"

#include <algorithm>
#include <tuple>

#include "twistlab/f2.hpp"
#include "twistlab/hyperelliptic.hpp"

namespace twistlab {

namespace {

std::vector<SmallMat> generator_matrices(const FiniteGroup& g, const ModuleAction& act) {
  std::vector<SmallMat> out;
  for (unsigned j = 0; j < g.num_generators(); ++j) out.push_back(act.matrix(g.generator_index(j)));
  return out;
}

}  // namespace

bool check_A(const FiniteGroup& g, const ModuleAction& act) {
  const unsigned d = act.dim();
  if (d == 0) return false;
  const std::vector<SmallMat> gens = generator_matrices(g, act);
  for (std::uint32_t v = 1; v < (1U << d); ++v) {
    Echelon64 span;
    std::vector<std::uint32_t> orbit{v};
    std::vector<std::uint8_t> seen(1U << d, 0);
    seen[v] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      span.insert(orbit[i]);
      for (const SmallMat& m : gens) {
        const std::uint32_t w = m.apply(orbit[i]);
        if (!seen[w]) {
          seen[w] = 1;
          orbit.push_back(w);
        }
      }
    }
    if (span.rank() != d) return false;
  }
  // M g = g M, unknown M[r][c] at bit r*d + c.
  if (d * d > 64) throw ContractError("commutant computation needs dim <= 8");
  std::vector<std::uint64_t> rows;
  for (const SmallMat& m : gens)
    for (unsigned r = 0; r < d; ++r)
      for (unsigned c = 0; c < d; ++c) {
        std::uint64_t form = 0;
        for (unsigned k = 0; k < d; ++k) {
          if (m.get(k, c)) form ^= 1ULL << (r * d + k);
          if (m.get(r, k)) form ^= 1ULL << (k * d + c);
        }
        if (form != 0) rows.push_back(form);
      }
  return kernel64(rows, d * d).size() == 1;
}

std::optional<Index> check_B(const FiniteGroup& g, const ModuleAction& act) {
  for (Index x = 0; x < g.order(); ++x)
    if (act.matrix(x).fixed_dim() == 0) return x;
  return std::nullopt;
}

CheckCResult check_C(const FiniteGroup& g, const ModuleAction& act, const H1Result& h, std::uint64_t c_class,
                     bool all_elements) {
  std::vector<Index> elems;
  if (all_elements) {
    for (Index x = 0; x < g.order(); ++x) elems.push_back(x);
  } else {
    for (const auto& cl : conjugacy_classes(g).classes) elems.push_back(cl[0]);
  }
  const unsigned d = act.dim();
  const unsigned k = h.dim();
  CheckCResult res;
  if (k > 0) {
    // Row block of x: a(x) modulo the image of x - 1, for a running over the basis.
    F2Mat m(0, k);
    for (Index x : elems) {
      const SmallMat t = act.matrix(x).plus_identity();
      Echelon64 img;
      for (unsigned c = 0; c < d; ++c) img.insert(t.column(c));
      std::vector<std::uint64_t> resid(k);
      for (unsigned b = 0; b < k; ++b) resid[b] = img.reduce(h.h1_basis[b][x]);
      for (unsigned r = 0; r < d; ++r) {
        F2Vec row(k);
        for (unsigned b = 0; b < k; ++b) row.set(b, (resid[b] >> r) & 1ULL);
        if (!row.is_zero()) m.append_row(row);
      }
    }
    for (const F2Vec& v : m.kernel_basis()) res.intersection_basis.push_back(v.word(0));
  }
  if (c_class == 0) {
    res.holds = res.intersection_basis.empty();
  } else {
    Echelon64 e;
    for (std::uint64_t v : res.intersection_basis) e.insert(v);
    res.holds = res.intersection_basis.size() == 1 && e.contains(c_class);
  }
  return res;
}

bool check_HS16(const FiniteGroup& g, const ModuleAction& act, const H1Result& h) {
  if (h.dim() != 0) return false;
  for (Index x = 0; x < g.order(); ++x)
    if (act.matrix(x).fixed_dim() == 1) return true;
  return false;
}

AssumptionReport assess(const FiniteGroup& g, const ModuleAction& act, const SymplecticSpace& space,
                        bool transitive) {
  AssumptionReport r;
  r.order = g.order();
  r.generators = g.generators();
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    if (i != 0) r.generators_text += ',';
    r.generators_text += g.law().format(r.generators[i]);
  }
  r.fp = fingerprint(g);
  r.transitive = transitive;
  const H1Result h = h1(g, act);
  r.h1_dim = h.dim();
  r.c_class = class_of_c(h, g, act, space);
  r.A = check_A(g, act);
  r.witness_b = check_B(g, act);
  r.B = r.witness_b.has_value();
  if (r.B) r.witness_b_text = g.format(*r.witness_b);
  const CheckCResult c = check_C(g, act, h, r.c_class);
  r.C = c.holds;
  r.intersection_basis = c.intersection_basis;
  r.hs16_raw = check_HS16(g, act, h);
  r.hs16 = r.hs16_raw && r.A;
  return r;
}

std::vector<AssumptionReport> survey_s6(std::size_t subgroup_cap) {
  const PermutationModel model(6);
  FiniteGroup s6 = symmetric_group(6);
  const auto& law = dynamic_cast<const PermutationLaw&>(s6.law());
  const std::vector<SubgroupClass> classes = subgroups_up_to_conjugacy(s6, subgroup_cap);
  std::vector<AssumptionReport> out;
  out.reserve(classes.size());
  for (const SubgroupClass& sc : classes) {
    const FiniteGroup h = FiniteGroup::enumerate(s6.law_ptr(), sc.generators, 720);
    const ModuleAction act = model.action(h);
    out.push_back(assess(h, act, model.space(), is_transitive(law, sc.generators)));
  }
  std::stable_sort(out.begin(), out.end(), [](const AssumptionReport& a, const AssumptionReport& b) {
    return std::tie(a.order, a.fp, a.generators) < std::tie(b.order, b.fp, b.generators);
  });
  return out;
}

}  // namespace twistlab

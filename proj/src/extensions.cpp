#include "twistlab/extensions.hpp"

#include <bit>
#include <random>

#include "twistlab/assumptions.hpp"
#include "twistlab/hyperelliptic.hpp"

namespace twistlab {

namespace detail {

struct GammaTables {
  unsigned n = 0;
  unsigned dim = 0;
  std::size_t gord = 0;
  std::vector<Index> gmul;
  std::vector<Index> ginv;
  std::vector<std::uint32_t> act;  ///< act[(g << dim) | w]
  std::shared_ptr<const GroupLaw> base_law;
  std::vector<Key> base_keys;

  std::uint32_t act_box(Index g, std::uint32_t v) const {
    std::uint32_t out = 0;
    const std::uint32_t mask = static_cast<std::uint32_t>(low_mask(dim));
    for (unsigned i = 0; i < n; ++i)
      out |= act[(static_cast<std::size_t>(g) << dim) | ((v >> (i * dim)) & mask)] << (i * dim);
    return out;
  }
  Index mul(Index x, Index y) const {
    const Index g = static_cast<Index>(x % gord);
    const Index h = static_cast<Index>(y % gord);
    const std::uint32_t v = static_cast<std::uint32_t>(x / gord) ^ act_box(g, static_cast<std::uint32_t>(y / gord));
    return static_cast<Index>(v * gord + gmul[g * gord + h]);
  }
  Index inv(Index x) const {
    const Index gi = ginv[x % gord];
    return static_cast<Index>(act_box(gi, static_cast<std::uint32_t>(x / gord)) * gord + gi);
  }
};

struct ETables {
  std::shared_ptr<const GammaTables> gt;
  std::vector<EtaComponent> comps;
  std::vector<std::vector<std::uint32_t>> inflated;  ///< by base index
  std::vector<std::uint64_t> pair_row;               ///< bit w of pair_row[v] is e(v, w)
  EtaOverride control;

  std::uint32_t a(unsigned i, Index x) const {
    if (i < gt->n) return (static_cast<std::uint32_t>(x / gt->gord) >> (i * gt->dim)) & static_cast<std::uint32_t>(low_mask(gt->dim));
    return inflated[i - gt->n][x % gt->gord];
  }
  std::uint64_t eta(Index x, Index y) const {
    if (control.zero) return 0;
    const Index g = static_cast<Index>(x % gt->gord);
    std::uint64_t out = 0;
    for (std::size_t s = 0; s < comps.size(); ++s) {
      const std::uint32_t ai = a(comps[s].i, x);
      if (ai == 0) continue;
      const std::uint32_t w = gt->act[(static_cast<std::size_t>(g) << gt->dim) | a(comps[s].j, y)];
      out |= ((pair_row[ai] >> w) & 1ULL) << s;
    }
    if (control.flip != 0 && x == control.x && y == control.y) out ^= control.flip;
    return out;
  }
  Key mul(Key p, Key q) const {
    const Index x = CentralExtE::gamma_of(p);
    const Index y = CentralExtE::gamma_of(q);
    return CentralExtE::make_key(CentralExtE::lambda_of(p) ^ CentralExtE::lambda_of(q) ^ eta(x, y), gt->mul(x, y));
  }
  Key inv(Key p) const {
    const Index x = CentralExtE::gamma_of(p);
    const Index xi = gt->inv(x);
    return CentralExtE::make_key(CentralExtE::lambda_of(p) ^ eta(x, xi), xi);
  }
};

}  // namespace detail

namespace {

std::string box_text(std::uint32_t v, unsigned n, unsigned dim) {
  std::string s;
  for (unsigned i = 0; i < n; ++i) {
    if (i != 0) s += ',';
    for (unsigned b = 0; b < dim; ++b) s += ((v >> (i * dim + b)) & 1U) ? '1' : '0';
  }
  return s;
}

class GammaLaw final : public GroupLaw {
 public:
  explicit GammaLaw(std::shared_ptr<const detail::GammaTables> t) : t_(std::move(t)) {}
  Key identity() const override { return 0; }
  Key multiply(Key a, Key b) const override { return t_->mul(static_cast<Index>(a), static_cast<Index>(b)); }
  Key inverse(Key a) const override { return t_->inv(static_cast<Index>(a)); }
  std::string format(Key a) const override {
    const Index x = static_cast<Index>(a);
    return "(" + box_text(static_cast<std::uint32_t>(x / t_->gord), t_->n, t_->dim) + "; " +
           t_->base_law->format(t_->base_keys[x % t_->gord]) + ")";
  }

 private:
  std::shared_ptr<const detail::GammaTables> t_;
};

class ELaw final : public GroupLaw {
 public:
  explicit ELaw(std::shared_ptr<const detail::ETables> t) : t_(std::move(t)), gl_(t_->gt) {}
  Key identity() const override { return 0; }
  Key multiply(Key a, Key b) const override { return t_->mul(a, b); }
  Key inverse(Key a) const override { return t_->inv(a); }
  std::string format(Key a) const override {
    std::string l;
    for (std::size_t s = 0; s < t_->comps.size(); ++s) l += ((CentralExtE::lambda_of(a) >> s) & 1ULL) ? '1' : '0';
    return "[" + l + "]" + gl_.format(CentralExtE::gamma_of(a));
  }

 private:
  std::shared_ptr<const detail::ETables> t_;
  GammaLaw gl_;
};

std::vector<Key> gamma_generators(const detail::GammaTables& t, const FiniteGroup& base) {
  std::vector<Key> gens;
  for (unsigned j = 0; j < base.num_generators(); ++j) gens.push_back(base.generator_index(j));
  for (unsigned i = 0; i < t.n; ++i)
    for (unsigned b = 0; b < t.dim; ++b) gens.push_back(static_cast<Key>((1ULL << (i * t.dim + b)) * t.gord));
  return gens;
}

}  // namespace

// ------------------------------------------------------------------- Gamma

SemidirectGamma::SemidirectGamma(const FiniteGroup& base, const ModuleAction& act, unsigned n, std::size_t cap)
    : base_(&base), act_(&act) {
  const unsigned d = act.dim();
  if (n == 0) throw ContractError("Gamma needs n >= 1");
  if (static_cast<std::size_t>(n) * d > 24) throw ContractError("V^n must fit in 24 bits");
  const std::size_t gord = base.order();
  const std::size_t order = gord << (n * d);
  if (order > cap) throw CapacityError("|V|^n |G| exceeds the Gamma cap", cap);
  if (gord > 4096) throw CapacityError("base group too large for a multiplication table", 4096);
  auto t = std::make_shared<detail::GammaTables>();
  t->n = n;
  t->dim = d;
  t->gord = gord;
  t->gmul.resize(gord * gord);
  for (Index a = 0; a < gord; ++a)
    for (Index b = 0; b < gord; ++b) t->gmul[a * gord + b] = base.mul(a, b);
  t->ginv.resize(gord);
  for (Index a = 0; a < gord; ++a) t->ginv[a] = base.inv(a);
  t->act.resize(gord << d);
  for (Index g = 0; g < gord; ++g)
    for (std::uint32_t w = 0; w < (1U << d); ++w) t->act[(static_cast<std::size_t>(g) << d) | w] = act.apply(g, w);
  t->base_law = base.law_ptr();
  t->base_keys = base.keys();
  tables_ = t;
  group_ = FiniteGroup::enumerate(std::make_shared<GammaLaw>(t), gamma_generators(*t, base), cap);
  if (group_.order() != order) throw ContractError("Gamma enumeration has the wrong order");
  gamma_act_ = ModuleAction::from_function(group_, d, [this](Key k) { return act_->matrix(base_index(static_cast<Index>(k))); });
  for (unsigned i = 0; i < n; ++i)
    if (!is_cocycle_on_edges(group_, gamma_act_, f(i))) throw ContractError("f_i is not a cocycle on Gamma");
}

unsigned SemidirectGamma::n() const { return tables_->n; }
unsigned SemidirectGamma::dim() const { return tables_->dim; }
std::size_t SemidirectGamma::base_order() const { return tables_->gord; }
std::size_t SemidirectGamma::order() const { return tables_->gord << (tables_->n * tables_->dim); }
Index SemidirectGamma::pack(std::uint32_t v, Index g) const { return static_cast<Index>(v * tables_->gord + g); }
std::uint32_t SemidirectGamma::box(Index x) const { return static_cast<std::uint32_t>(x / tables_->gord); }
Index SemidirectGamma::base_index(Index x) const { return static_cast<Index>(x % tables_->gord); }
std::uint32_t SemidirectGamma::coord(Index x, unsigned i) const {
  return (box(x) >> (i * dim())) & static_cast<std::uint32_t>(low_mask(dim()));
}
Index SemidirectGamma::mul(Index x, Index y) const { return tables_->mul(x, y); }
Index SemidirectGamma::inv(Index x) const { return tables_->inv(x); }
std::uint32_t SemidirectGamma::act(Index g, std::uint32_t w) const {
  return tables_->act[(static_cast<std::size_t>(g) << dim()) | w];
}

Cocycle1 SemidirectGamma::f(unsigned i) const {
  if (i >= n()) throw ContractError("f_i index out of range");
  Cocycle1 c;
  c.values.resize(group_.order());
  for (Index x = 0; x < group_.order(); ++x) c.values[x] = coord(static_cast<Index>(group_.key(x)), i);
  return c;
}

// ----------------------------------------------------------------------- E

CentralExtE::CentralExtE(const SemidirectGamma& gamma, const SmallMat& gram, std::vector<Cocycle1> inflated,
                         std::size_t cap, EtaOverride control)
    : gamma_(&gamma), gram_(gram), inflated_(std::move(inflated)), cap_(cap) {
  const unsigned n = gamma.n();
  const unsigned d = gamma.dim();
  if (gram.dim() != d) throw ContractError("Gram matrix dimension differs from the module");
  for (const Cocycle1& c : inflated_)
    if (!is_cocycle_on_edges(gamma.base(), gamma.base_action(), c))
      throw PreconditionError("inflated class is not a cocycle on the base group");
  for (unsigned k = 0; k < m(); ++k)
    for (unsigned j = 0; j < n; ++j) comps_.push_back({n + k, j});
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) comps_.push_back({i, j});
  if (comps_.size() > 20) throw ContractError("at most 20 eta components supported");
  if ((gamma.order() << comps_.size()) > cap) throw CapacityError("2^|S| |Gamma| exceeds the E cap", cap);
  if (d > 6) throw ContractError("E needs dim V <= 6");
  auto t = std::make_shared<detail::ETables>();
  t->gt = gamma.tables();
  t->comps = comps_;
  for (const Cocycle1& c : inflated_) t->inflated.push_back(c.values);
  t->pair_row.resize(1U << d);
  for (std::uint32_t v = 0; v < (1U << d); ++v)
    for (std::uint32_t w = 0; w < (1U << d); ++w)
      if (pairing(gram, v, w)) t->pair_row[v] |= 1ULL << w;
  t->control = control;
  tables_ = t;
}

std::uint32_t CentralExtE::a(unsigned i, Index x) const { return tables_->a(i, x); }
std::uint64_t CentralExtE::eta(Index x, Index y) const { return tables_->eta(x, y); }
Key CentralExtE::mul(Key p, Key q) const { return tables_->mul(p, q); }
Key CentralExtE::inv(Key p) const { return tables_->inv(p); }

const FiniteGroup& CentralExtE::group() const {
  if (!group_) {
    std::vector<Key> gens;
    for (Key k : gamma_generators(*tables_->gt, gamma_->base())) gens.push_back(make_key(0, static_cast<Index>(k)));
    for (std::size_t s = 0; s < comps_.size(); ++s) gens.push_back(make_key(1ULL << s, 0));
    group_ = std::make_unique<FiniteGroup>(FiniteGroup::enumerate(std::make_shared<ELaw>(tables_), gens, cap_));
    if (group_->order() != order()) throw ContractError("E enumeration has the wrong order");
  }
  return *group_;
}

const ModuleAction& CentralExtE::action() const {
  if (!action_) {
    const FiniteGroup& g = group();
    action_ = std::make_unique<ModuleAction>(ModuleAction::from_function(g, gamma_->dim(), [this](Key k) {
      return gamma_->base_action().matrix(gamma_->base_index(gamma_of(k)));
    }));
  }
  return *action_;
}

Cocycle1 CentralExtE::a_cocycle(unsigned i) const {
  const FiniteGroup& g = group();
  Cocycle1 c;
  c.values.resize(g.order());
  for (Index x = 0; x < g.order(); ++x) c.values[x] = a(i, gamma_of(g.key(x)));
  return c;
}

Cochain1Mu2 CentralExtE::gamma_cochain(unsigned s) const {
  const FiniteGroup& g = group();
  Cochain1Mu2 c;
  c.values.resize(g.order());
  for (Index x = 0; x < g.order(); ++x) c.values[x] = (lambda_of(g.key(x)) >> s) & 1ULL;
  return c;
}

// ----------------------------------------------------------------- checks

AssocReport check_associativity(const CentralExtE& e, std::size_t exhaustive_limit, std::size_t samples,
                                std::uint64_t seed) {
  AssocReport rep;
  const SemidirectGamma& gm = e.gamma();
  const std::size_t n = gm.order();
  if (e.order() <= exhaustive_limit) {
    rep.exhaustive = true;
    for (Index x = 0; x < n; ++x) {
      ++rep.checks;
      if (e.eta(x, 0) != 0 || e.eta(0, x) != 0) {
        rep.witness = std::array<Key, 3>{CentralExtE::make_key(0, x), CentralExtE::make_key(1, 0), 0};
        return rep;
      }
    }
    std::vector<Key> cand;
    for (Key k : gamma_generators(*gm.tables(), gm.base())) cand.push_back(k);
    const FiniteGroup span = FiniteGroup::enumerate_greedy(gm.group().law_ptr(), cand, n);
    std::vector<Index> sy(n);
    std::vector<std::uint64_t> eta_sy(n);
    for (Key sk : span.generators()) {
      const Index s = static_cast<Index>(sk);
      for (Index y = 0; y < n; ++y) {
        sy[y] = gm.mul(s, y);
        eta_sy[y] = e.eta(s, y);
      }
      for (Index x = 0; x < n; ++x) {
        const Index xs = gm.mul(x, s);
        const std::uint64_t eta_xs = e.eta(x, s);
        for (Index y = 0; y < n; ++y) {
          const bool gamma_ok = gm.mul(xs, y) == gm.mul(x, sy[y]);
          if (!gamma_ok || (eta_xs ^ e.eta(xs, y)) != (eta_sy[y] ^ e.eta(x, sy[y]))) {
            rep.witness = std::array<Key, 3>{CentralExtE::make_key(0, x), CentralExtE::make_key(0, s),
                                             CentralExtE::make_key(0, y)};
            rep.checks += static_cast<std::size_t>(x) * n + y + 1;
            return rep;
          }
        }
      }
      rep.checks += n * n;
    }
    rep.associative = true;
    return rep;
  }
  std::mt19937_64 rng(seed);
  const unsigned ns = e.num_components();
  auto draw = [&]() {
    return CentralExtE::make_key(rng() & low_mask(ns), static_cast<Index>(rng() % n));
  };
  for (std::size_t t = 0; t < samples; ++t) {
    const Key p = draw();
    const Key q = draw();
    const Key r = draw();
    ++rep.checks;
    if (e.mul(e.mul(p, q), r) != e.mul(p, e.mul(q, r))) {
      rep.witness = std::array<Key, 3>{p, q, r};
      return rep;
    }
  }
  rep.associative = true;
  return rep;
}

bool check_gamma_coboundaries(const CentralExtE& e) {
  const FiniteGroup& g = e.group();
  const ModuleAction& act = e.action();
  for (unsigned s = 0; s < e.num_components(); ++s) {
    const EtaComponent c = e.components()[s];
    const TwoCochain cup = cup_mu2(g, act, e.gram(), e.a_cocycle(c.i), e.a_cocycle(c.j));
    if (!coboundary_matches(g, e.gamma_cochain(s), cup, false)) return false;
  }
  return true;
}

bool check_kernel_central(const CentralExtE& e) {
  const FiniteGroup& g = e.group();
  for (unsigned s = 0; s < e.num_components(); ++s) {
    const Key z = CentralExtE::make_key(1ULL << s, 0);
    for (Key t : g.generators())
      if (e.mul(z, t) != e.mul(t, z)) return false;
  }
  return true;
}

HomsFactorReport homs_factor_check(const CentralExtE& e) {
  const FiniteGroup& g = e.group();
  const auto chars = homs_to_mu2(g);
  HomsFactorReport r;
  r.num_characters = chars.size();
  r.factors = true;
  for (const auto& chi : chars)
    for (Index x = 0; x < g.order(); ++x)
      if (chi[x] != 0 && e.gamma().base_index(CentralExtE::gamma_of(g.key(x))) == 0) r.factors = false;
  return r;
}

std::map<std::uint64_t, std::size_t> realized_sign_patterns(const CentralExtE& e, Index g) {
  const SemidirectGamma& gm = e.gamma();
  const SmallMat t = gm.base_action().matrix(g).plus_identity();
  const auto tinv = t.inverse();
  if (!tinv) throw DomainError("realized_sign_patterns needs V^g = 0");
  const unsigned ns = e.num_components();
  std::map<std::uint64_t, std::size_t> out;
  const std::uint32_t boxes = 1U << (gm.n() * gm.dim());
  for (std::uint32_t v = 0; v < boxes; ++v) {
    const Index x = gm.pack(v, g);
    std::uint64_t base = 0;
    for (unsigned s = 0; s < ns; ++s) {
      const EtaComponent c = e.components()[s];
      const std::uint32_t p = tinv->apply(e.a(c.i, x));
      if (pairing(e.gram(), p, e.a(c.j, x))) base |= 1ULL << s;
    }
    for (std::uint64_t lambda = 0; lambda < (1ULL << ns); ++lambda) ++out[base ^ lambda];
  }
  return out;
}

std::vector<std::uint8_t> quad_form_table(const CentralExtE& e, unsigned s) {
  const SemidirectGamma& gm = e.gamma();
  const std::uint32_t boxes = 1U << (gm.n() * gm.dim());
  std::vector<std::uint8_t> q(boxes);
  for (std::uint32_t v = 0; v < boxes; ++v) {
    const Index x = gm.pack(v, 0);
    q[v] = (e.eta(x, x) >> s) & 1ULL;
  }
  return q;
}

bool commutator_is_polarization(const CentralExtE& e) {
  const SemidirectGamma& gm = e.gamma();
  const std::uint32_t boxes = 1U << (gm.n() * gm.dim());
  std::vector<std::vector<std::uint8_t>> q;
  for (unsigned s = 0; s < e.num_components(); ++s) q.push_back(quad_form_table(e, s));
  for (std::uint32_t v = 0; v < boxes; ++v)
    for (std::uint32_t w = 0; w < boxes; ++w) {
      const Key p = CentralExtE::make_key(0, gm.pack(v, 0));
      const Key r = CentralExtE::make_key(0, gm.pack(w, 0));
      const Key c = e.mul(e.mul(e.mul(p, r), e.inv(p)), e.inv(r));
      if (CentralExtE::gamma_of(c) != 0) return false;
      std::uint64_t pol = 0;
      for (unsigned s = 0; s < e.num_components(); ++s)
        if (q[s][v ^ w] ^ q[s][v] ^ q[s][w]) pol |= 1ULL << s;
      if (CentralExtE::lambda_of(c) != pol) return false;
    }
  return true;
}

TrivializingLocus trivializing_locus(const SemidirectGamma& gamma) {
  if (gamma.n() != 1) throw PreconditionError("trivializing_locus needs n = 1");
  if (!check_A(gamma.base(), gamma.base_action()))
    throw PreconditionError("condition (A) fails for the base action");
  const FiniteGroup& g = gamma.group();
  const ModuleAction& act = gamma.action();
  const Cocycle1 f1 = gamma.f(0);
  TrivializingLocus r;
  r.in_locus.assign(g.order(), 0);
  r.in_conjugates.assign(g.order(), 0);
  for (Index x = 0; x < g.order(); ++x) {
    r.in_locus[x] = restrict_to_cyclic_trivial(act, f1, x);
    r.size += r.in_locus[x];
  }
  const std::size_t gord = gamma.base_order();
  for (Index t = 0; t < g.order(); ++t) {
    const Index tk = static_cast<Index>(g.key(t));
    const Index ti = gamma.inv(tk);
    for (Index h = 0; h < gord; ++h) {
      const Index c = gamma.mul(gamma.mul(tk, gamma.pack(0, h)), ti);
      r.in_conjugates[g.index_of(c)] = 1;
    }
  }
  r.agree = r.in_locus == r.in_conjugates;
  const auto chars = homs_to_mu2(g);
  r.characters_nonconstant = true;
  for (const auto& chi : chars) {
    bool nontrivial = false;
    for (Index x = 0; x < g.order() && !nontrivial; ++x) nontrivial = chi[x] != 0;
    if (!nontrivial) continue;
    ++r.nontrivial_characters;
    bool hit = false;
    for (Index x = 0; x < g.order() && !hit; ++x) hit = r.in_locus[x] && chi[x] != 0;
    if (!hit) r.characters_nonconstant = false;
  }
  return r;
}

bool quad_forms_independent(const SymplecticSpace& space, unsigned n) {
  const unsigned d = space.dim();
  if (static_cast<std::size_t>(n) * d > 24) throw ContractError("V^n too large to evaluate exhaustively");
  std::vector<std::pair<unsigned, unsigned>> forms;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) forms.emplace_back(i, j);
  if (forms.size() > 20) throw ContractError("too many forms");
  const std::uint32_t mask = static_cast<std::uint32_t>(low_mask(d));
  // nonzero[c] set once the combination c is seen to be nonzero somewhere.
  std::vector<std::uint8_t> nonzero(1ULL << forms.size(), 0);
  const std::uint64_t points = 1ULL << (n * d);
  for (std::uint64_t v = 0; v < points; ++v) {
    std::uint64_t vals = 0;
    for (std::size_t f = 0; f < forms.size(); ++f) {
      const std::uint32_t vi = static_cast<std::uint32_t>(v >> (forms[f].first * d)) & mask;
      const std::uint32_t vj = static_cast<std::uint32_t>(v >> (forms[f].second * d)) & mask;
      if (space.e(vi, vj)) vals |= 1ULL << f;
    }
    if (vals == 0) continue;
    for (std::uint64_t c = 1; c < nonzero.size(); ++c)
      if (parity(c & vals)) nonzero[c] = 1;
  }
  for (std::uint64_t c = 1; c < nonzero.size(); ++c)
    if (!nonzero[c]) return false;
  return true;
}

CupIndependence cup_independence_check(unsigned d, unsigned n, unsigned m) {
  if (d < 1 || d > 3) throw ContractError("cup_independence_check supports 1 <= d <= 3");
  CupIndependence r;
  r.forms_independent = quad_forms_independent(SymplecticSpace::standard(d), n);
  if (m == 0) {
    r.classes_independent = true;
    return r;
  }
  std::vector<std::uint64_t> coords;
  if (d == 1) {
    const SymplecticSpace s = SymplecticSpace::standard(1);
    const FiniteGroup sp = generate_sp(s, 100);
    const auto& law = dynamic_cast<const MatrixLaw&>(sp.law());
    const ModuleAction act = ModuleAction::from_function(sp, 2, [&law](Key k) { return law.matrix(k); });
    const H1Result h = h1(sp, act);
    for (const Cocycle1& b : h.h1_basis) coords.push_back(h.class_coords(b));
  } else {
    const PermutationModel model(2 * d + 2);
    const FiniteGroup g = symmetric_group(2 * d + 2);
    const ModuleAction act = model.action(g);
    const H1Result h = h1(g, act);
    coords.push_back(h.class_coords(w_cocycle(g, model, 1)));
    for (const Cocycle1& b : h.h1_basis) coords.push_back(h.class_coords(b));
  }
  if (coords.size() < m) {
    r.classes_independent = false;
    return r;
  }
  coords.resize(m);
  r.classes_independent = rank64(coords) == m;
  return r;
}

}  // namespace twistlab

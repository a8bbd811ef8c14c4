#include "twistlab/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace twistlab {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool is_prime_power(unsigned n) {
  if (n < 2) return false;
  unsigned p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth < 0) throw ContractError("unbalanced brackets in '" + text + "'");
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw ContractError("unbalanced brackets in '" + text + "'");
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

// ---------------------------------------------------------------- permutations

PermutationLaw::PermutationLaw(unsigned degree) : degree_(degree) {
  if (degree == 0 || degree > 16) throw ContractError("permutation degree must lie in 1..16");
  for (unsigned i = 0; i < degree; ++i) id_ |= static_cast<Key>(i) << (4 * i);
}

Key PermutationLaw::multiply(Key a, Key b) const {
  Key out = 0;
  for (unsigned i = 0; i < degree_; ++i) out |= static_cast<Key>(image(a, image(b, i))) << (4 * i);
  return out;
}

Key PermutationLaw::inverse(Key a) const {
  Key out = 0;
  for (unsigned i = 0; i < degree_; ++i) out |= static_cast<Key>(i) << (4 * image(a, i));
  return out;
}

std::string PermutationLaw::format(Key a) const {
  std::string s;
  std::vector<bool> seen(degree_, false);
  for (unsigned i = 0; i < degree_; ++i) {
    if (seen[i] || image(a, i) == i) continue;
    s += '(';
    unsigned j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) s += ' ';
      s += std::to_string(j + 1);
      first = false;
      j = image(a, j);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

Key PermutationLaw::from_images(const std::vector<unsigned>& images) const {
  if (images.size() != degree_) throw ContractError("wrong number of images for permutation");
  std::vector<bool> hit(degree_, false);
  Key k = 0;
  for (unsigned i = 0; i < degree_; ++i) {
    if (images[i] >= degree_ || hit[images[i]]) throw ContractError("images do not form a bijection");
    hit[images[i]] = true;
    k |= static_cast<Key>(images[i]) << (4 * i);
  }
  return k;
}

Key PermutationLaw::parse(const std::string& cycles) const {
  Key result = id_;
  std::size_t pos = 0;
  const std::string s = trim(cycles);
  if (s.empty()) return result;
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw ContractError("expected '(' in permutation '" + cycles + "'");
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw ContractError("unterminated cycle in '" + cycles + "'");
    std::string body = s.substr(pos + 1, close - pos - 1);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<unsigned> pts;
    std::string tok;
    while (in >> tok) {
      unsigned long v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(tok, &used);
        if (used != tok.size()) throw ContractError("");
      } catch (const std::exception&) {
        throw ContractError("bad point '" + tok + "' in permutation '" + cycles + "'");
      }
      if (v < 1 || v > degree_)
        throw ContractError("point " + tok + " outside 1.." + std::to_string(degree_));
      pts.push_back(static_cast<unsigned>(v - 1));
    }
    std::vector<unsigned> images(degree_);
    std::iota(images.begin(), images.end(), 0U);
    std::vector<bool> used(degree_, false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[pts[i]]) throw ContractError("repeated point in cycle of '" + cycles + "'");
      used[pts[i]] = true;
      images[pts[i]] = pts[(i + 1) % pts.size()];
    }
    result = multiply(result, from_images(images));
    pos = close + 1;
  }
  return result;
}

std::vector<Key> PermutationLaw::parse_list(const std::string& text) const {
  std::vector<Key> out;
  for (const std::string& part : split_top_level(text)) {
    if (part.empty()) throw ContractError("empty generator in '" + text + "'");
    out.push_back(parse(part));
  }
  return out;
}

// -------------------------------------------------------------------- matrices

MatrixLaw::MatrixLaw(unsigned dim) : dim_(dim), id_(0) {
  if (dim == 0 || dim > 8) throw ContractError("matrix group dimension must lie in 1..8");
  id_ = SmallMat::identity(dim).pack();
}

Key MatrixLaw::multiply(Key a, Key b) const { return (matrix(a) * matrix(b)).pack(); }

Key MatrixLaw::inverse(Key a) const {
  const auto inv = matrix(a).inverse();
  if (!inv) throw ContractError("singular matrix has no inverse");
  return inv->pack();
}

std::string MatrixLaw::format(Key a) const { return "[" + matrix(a).to_string() + "]"; }

Key MatrixLaw::parse(const std::string& text) const {
  std::string body = trim(text);
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ContractError("unterminated matrix '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  std::replace(body.begin(), body.end(), ',', ' ');
  std::istringstream in(body);
  std::vector<std::string> rows;
  std::string tok;
  while (in >> tok) rows.push_back(tok);
  if (rows.size() != dim_) throw ContractError("matrix '" + text + "' must have " + std::to_string(dim_) + " rows");
  const SmallMat m = SmallMat::from_strings(rows);
  if (m.rank() != dim_) throw ContractError("matrix '" + text + "' is singular");
  return m.pack();
}

std::vector<Key> MatrixLaw::parse_list(const std::string& text) const {
  std::vector<Key> out;
  for (const std::string& part : split_top_level(text)) {
    if (part.empty()) throw ContractError("empty generator in '" + text + "'");
    out.push_back(parse(part));
  }
  return out;
}

// ---------------------------------------------------------------- FiniteGroup

void FiniteGroup::rehash(std::size_t capacity) {
  std::size_t cap = 16;
  while (cap < capacity) cap <<= 1;
  hash_.assign(cap, kNoIndex);
  hash_mask_ = cap - 1;
  for (Index i = 0; i < keys_.size(); ++i) insert_key(keys_[i], i);
}

void FiniteGroup::insert_key(Key k, Index idx) {
  std::uint64_t h = splitmix(k) & hash_mask_;
  while (hash_[h] != kNoIndex) h = (h + 1) & hash_mask_;
  hash_[h] = idx;
}

Index FiniteGroup::index_of(Key k) const {
  std::uint64_t h = splitmix(k) & hash_mask_;
  while (true) {
    const Index i = hash_[h];
    if (i == kNoIndex) return kNoIndex;
    if (keys_[i] == k) return i;
    h = (h + 1) & hash_mask_;
  }
}

FiniteGroup FiniteGroup::enumerate(std::shared_ptr<const GroupLaw> law, std::vector<Key> generators,
                                   std::size_t cap) {
  if (generators.size() > 255) throw ContractError("at most 255 generators supported");
  if (cap == 0) throw ContractError("group cap must be positive");
  FiniteGroup g;
  g.law_ = std::move(law);
  g.gens_ = std::move(generators);
  const unsigned k = static_cast<unsigned>(g.gens_.size());
  g.keys_.push_back(g.law_->identity());
  g.parent_.push_back(0);
  g.parent_gen_.push_back(0);
  g.rehash(64);
  std::vector<Index> succ_rows;
  for (std::size_t x = 0; x < g.keys_.size(); ++x) {
    for (unsigned j = 0; j < k; ++j) {
      const Key y = g.law_->multiply(g.keys_[x], g.gens_[j]);
      Index iy = g.index_of(y);
      if (iy == kNoIndex) {
        if (g.keys_.size() >= cap) throw CapacityError("group order exceeds cap", cap);
        iy = static_cast<Index>(g.keys_.size());
        g.keys_.push_back(y);
        g.parent_.push_back(static_cast<Index>(x));
        g.parent_gen_.push_back(static_cast<std::uint8_t>(j));
        if (2 * (g.keys_.size() + 1) > g.hash_.size()) g.rehash(4 * g.keys_.size());
        else g.insert_key(y, iy);
      }
      succ_rows.push_back(iy);
    }
  }
  const std::size_t n = g.keys_.size();
  g.succ_.resize(n * k);
  for (std::size_t x = 0; x < n; ++x)
    for (unsigned j = 0; j < k; ++j) g.succ_[j * n + x] = succ_rows[x * k + j];
  for (unsigned j = 0; j < k; ++j) g.gen_index_.push_back(g.succ_[j * n]);
  g.inv_.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    g.inv_[x] = g.index_of(g.law_->inverse(g.keys_[x]));
    if (g.inv_[x] == kNoIndex) throw ContractError("group law inverse escaped the enumerated set");
  }
  return g;
}

FiniteGroup FiniteGroup::enumerate_greedy(std::shared_ptr<const GroupLaw> law, const std::vector<Key>& candidates,
                                          std::size_t cap) {
  std::vector<Key> gens;
  FiniteGroup g = enumerate(law, gens, cap);
  for (Key c : candidates) {
    if (g.contains(c)) continue;
    gens.push_back(c);
    g = enumerate(law, gens, cap);
  }
  return g;
}

void FiniteGroup::build_table(std::size_t max_order) {
  if (!table_.empty()) return;
  const std::size_t n = keys_.size();
  if (n > max_order) throw CapacityError("multiplication table too large", max_order);
  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Index c = index_of(law_->multiply(keys_[a], keys_[b]));
      if (c == kNoIndex) throw ContractError("group law product escaped the enumerated set");
      table_[a * n + b] = c;
    }
}

unsigned FiniteGroup::element_order(Index x) const {
  unsigned o = 1;
  Key id = law_->identity();
  Key k = keys_[x];
  while (k != id) {
    k = law_->multiply(k, keys_[x]);
    ++o;
  }
  return o;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  ConjugacyClasses cc;
  cc.class_of.assign(n, 0xFFFFFFFFU);
  cc.witness.assign(n, 0);
  for (Index x = 0; x < n; ++x) {
    if (cc.class_of[x] != 0xFFFFFFFFU) continue;
    const auto c = static_cast<std::uint32_t>(cc.classes.size());
    cc.classes.emplace_back();
    std::vector<Index>& members = cc.classes.back();
    cc.class_of[x] = c;
    cc.witness[x] = 0;
    members.push_back(x);
    for (std::size_t head = 0; head < members.size(); ++head) {
      const Index y = members[head];
      for (unsigned j = 0; j < g.num_generators(); ++j) {
        const Index s = g.generator_index(j);
        const Index z = g.conj(s, y);
        if (cc.class_of[z] != 0xFFFFFFFFU) continue;
        cc.class_of[z] = c;
        cc.witness[z] = g.mul(s, cc.witness[y]);
        members.push_back(z);
      }
    }
  }
  return cc;
}

// --------------------------------------------------------------- ModuleAction

ModuleAction ModuleAction::from_generators(const FiniteGroup& g, const std::vector<SmallMat>& gen_mats) {
  if (gen_mats.size() != g.num_generators()) throw ContractError("one matrix per generator required");
  ModuleAction a;
  a.dim_ = gen_mats.empty() ? 0 : gen_mats[0].dim();
  for (const SmallMat& m : gen_mats)
    if (m.dim() != a.dim_) throw ContractError("generator matrices have different dimensions");
  const std::size_t n = g.order();
  a.rows_.assign(n * a.dim_, 0);
  for (unsigned i = 0; i < a.dim_; ++i) a.rows_[i] = 1U << i;
  for (Index x = 1; x < n; ++x) {
    const SmallMat m = a.matrix(g.parent(x)) * gen_mats[g.parent_gen(x)];
    for (unsigned i = 0; i < a.dim_; ++i) a.rows_[static_cast<std::size_t>(x) * a.dim_ + i] = m.row(i);
  }
  for (Index x = 0; x < n; ++x)
    for (unsigned j = 0; j < g.num_generators(); ++j)
      if (!(a.matrix(x) * gen_mats[j] == a.matrix(g.succ(x, j))))
        throw ContractError("generator matrices do not define a homomorphism");
  return a;
}

ModuleAction ModuleAction::from_function(const FiniteGroup& g, unsigned dim,
                                         const std::function<SmallMat(Key)>& rep) {
  ModuleAction a;
  a.dim_ = dim;
  a.rows_.assign(g.order() * dim, 0);
  for (Index x = 0; x < g.order(); ++x) {
    const SmallMat m = rep(g.key(x));
    if (m.dim() != dim) throw ContractError("representation returned wrong dimension");
    for (unsigned i = 0; i < dim; ++i) a.rows_[static_cast<std::size_t>(x) * dim + i] = m.row(i);
  }
  return a;
}

SmallMat ModuleAction::matrix(Index g) const {
  SmallMat m(dim_);
  for (unsigned i = 0; i < dim_; ++i) m.set_row(i, rows_[static_cast<std::size_t>(g) * dim_ + i]);
  return m;
}

bool ModuleAction::verify_homomorphism(const FiniteGroup& g) const {
  if (!matrix(0).is_identity()) return false;
  std::vector<SmallMat> gm;
  for (unsigned j = 0; j < g.num_generators(); ++j) gm.push_back(matrix(g.generator_index(j)));
  for (Index x = 0; x < g.order(); ++x)
    for (unsigned j = 0; j < g.num_generators(); ++j)
      if (!(matrix(x) * gm[j] == matrix(g.succ(x, j)))) return false;
  return true;
}

// ------------------------------------------------------------------ characters

namespace {

// forms[x] encodes chi(x) = <forms[x], (chi(s_0), ..., chi(s_{k-1}))>.
std::vector<std::uint64_t> character_kernel(const FiniteGroup& g, std::vector<std::uint64_t>& forms) {
  const unsigned k = g.num_generators();
  if (k > 64) throw ContractError("at most 64 generators supported for characters");
  const std::size_t n = g.order();
  forms.assign(n, 0);
  for (Index x = 1; x < n; ++x) forms[x] = forms[g.parent(x)] ^ (1ULL << g.parent_gen(x));
  // Constraint rank is at most k, so the echelon keeps the row list short.
  Echelon64 cons;
  std::vector<std::uint64_t> rows;
  for (Index x = 0; x < n; ++x)
    for (unsigned j = 0; j < k; ++j) {
      const std::uint64_t r = forms[x] ^ (1ULL << j) ^ forms[g.succ(x, j)];
      if (cons.insert(r)) rows.push_back(r);
    }
  return kernel64(rows, k);
}

}  // namespace

std::vector<std::vector<std::uint8_t>> homs_to_mu2(const FiniteGroup& g) {
  std::vector<std::uint64_t> forms;
  const std::vector<std::uint64_t> basis = character_kernel(g, forms);
  if (basis.size() > 20) throw ContractError("too many characters to list");
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint64_t combo = 0; combo < (1ULL << basis.size()); ++combo) {
    std::uint64_t u = 0;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if ((combo >> b) & 1ULL) u ^= basis[b];
    std::vector<std::uint8_t> table(g.order());
    for (Index x = 0; x < g.order(); ++x) table[x] = parity(forms[x] & u);
    out.push_back(std::move(table));
  }
  return out;
}

unsigned abelianization_f2_dim(const FiniteGroup& g) {
  std::vector<std::uint64_t> forms;
  return static_cast<unsigned>(character_kernel(g, forms).size());
}

// ---------------------------------------------------------------- fingerprints

std::string Fingerprint::to_string() const {
  std::string s = "order=" + std::to_string(order) + ";exp=" + std::to_string(exponent) + ";ab=" +
                  std::to_string(ab_dim) + ";classes=";
  for (std::size_t i = 0; i < class_sizes.size(); ++i) {
    if (i != 0) s += ',';
    s += std::to_string(class_sizes[i]);
  }
  return s;
}

Fingerprint fingerprint(const FiniteGroup& g) {
  Fingerprint f;
  f.order = g.order();
  unsigned e = 1;
  for (Index x = 0; x < g.order(); ++x) e = std::lcm(e, g.element_order(x));
  f.exponent = e;
  const ConjugacyClasses cc = conjugacy_classes(g);
  for (const auto& c : cc.classes) f.class_sizes.push_back(c.size());
  std::sort(f.class_sizes.begin(), f.class_sizes.end());
  f.ab_dim = abelianization_f2_dim(g);
  return f;
}

// ------------------------------------------------------------------ subgroups

namespace {

using Bitset = std::vector<std::uint64_t>;

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const {
    std::uint64_t h = 0;
    for (std::uint64_t w : b) h = splitmix(h ^ w);
    return static_cast<std::size_t>(h);
  }
};

bool test_bit(const Bitset& b, Index i) { return (b[i >> 6] >> (i & 63)) & 1ULL; }
void set_bit(Bitset& b, Index i) { b[i >> 6] |= 1ULL << (i & 63); }

// Closure of gens by right multiplication from the identity.
std::vector<Index> closure(const FiniteGroup& g, const std::vector<Index>& gens, Bitset& bits) {
  bits.assign((g.order() + 63) / 64, 0);
  std::vector<Index> elems{0};
  set_bit(bits, 0);
  for (std::size_t h = 0; h < elems.size(); ++h)
    for (Index s : gens) {
      const Index y = g.mul(elems[h], s);
      if (!test_bit(bits, y)) {
        set_bit(bits, y);
        elems.push_back(y);
      }
    }
  return elems;
}

}  // namespace

std::vector<SubgroupClass> subgroups_up_to_conjugacy(FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap) throw CapacityError("subgroup enumeration requires |G| within cap", cap);
  g.build_table(std::max<std::size_t>(cap, 4096));
  const std::size_t n = g.order();
  std::vector<bool> pp(n, false);
  for (Index x = 0; x < n; ++x) pp[x] = is_prime_power(g.element_order(x));

  struct Rep {
    Bitset bits;
    std::vector<Index> elems;
    std::vector<Index> gens;
    std::size_t class_size;
  };
  std::vector<Rep> reps;
  std::unordered_set<Bitset, BitsetHash> known;

  auto record = [&](Bitset bits, std::vector<Index> elems, std::vector<Index> gens) {
    std::unordered_set<Bitset, BitsetHash> conjugates;
    for (Index t = 0; t < n; ++t) {
      Bitset c((n + 63) / 64, 0);
      for (Index e : elems) set_bit(c, g.conj(t, e));
      conjugates.insert(std::move(c));
    }
    for (const Bitset& c : conjugates) known.insert(c);
    reps.push_back(Rep{std::move(bits), std::move(elems), std::move(gens), conjugates.size()});
  };

  {
    Bitset b;
    std::vector<Index> e = closure(g, {}, b);
    record(std::move(b), std::move(e), {});
  }
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (Index x = 0; x < n; ++x) {
      if (!pp[x] || test_bit(reps[r].bits, x)) continue;
      std::vector<Index> gens = reps[r].gens;
      gens.push_back(x);
      Bitset b;
      std::vector<Index> e = closure(g, gens, b);
      if (known.count(b) != 0) continue;
      record(std::move(b), std::move(e), std::move(gens));
    }
  }

  std::vector<SubgroupClass> out;
  for (Rep& rep : reps) {
    SubgroupClass sc;
    sc.elements = rep.elems;
    std::sort(sc.elements.begin(), sc.elements.end());
    for (Index s : rep.gens) sc.generators.push_back(g.key(s));
    sc.class_size = rep.class_size;
    out.push_back(std::move(sc));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SubgroupClass& a, const SubgroupClass& b) { return a.order() < b.order(); });
  return out;
}

bool is_transitive(const PermutationLaw& law, const std::vector<Key>& generators) {
  const unsigned d = law.degree();
  std::vector<bool> seen(d, false);
  std::vector<unsigned> q{0};
  seen[0] = true;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (Key s : generators) {
      const unsigned y = PermutationLaw::image(s, q[h]);
      if (!seen[y]) {
        seen[y] = true;
        q.push_back(y);
      }
    }
  return q.size() == d;
}

bool light_associativity(std::size_t order, Index identity, const std::vector<Index>& gens,
                         const std::function<Index(Index, Index)>& mul) {
  for (Index x = 0; x < order; ++x)
    if (mul(identity, x) != x || mul(x, identity) != x) return false;
  std::vector<Index> sy(order);
  for (Index s : gens) {
    for (Index y = 0; y < order; ++y) sy[y] = mul(s, y);
    for (Index x = 0; x < order; ++x) {
      const Index xs = mul(x, s);
      for (Index y = 0; y < order; ++y)
        if (mul(xs, y) != mul(x, sy[y])) return false;
    }
  }
  return true;
}

}  // namespace twistlab

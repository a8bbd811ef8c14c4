#include "twistlab/kummerq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "twistlab/error.hpp"

namespace twistlab {

// ---- Poly ----

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (Rational& q : c_) q.canonicalize();
  trim();
}

Poly Poly::from_integers(const std::vector<BigInt>& coeffs) {
  std::vector<Rational> c;
  for (const BigInt& z : coeffs) c.emplace_back(z);
  return Poly(std::move(c));
}

Poly Poly::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, 0);
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '"' && ch != '\n') s += ch;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw PreconditionError("polynomial must be written as [c0,c1,...]: " + text);
  s = s.substr(1, s.size() - 2);
  std::vector<Rational> c;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    const std::string tok = s.substr(start, comma - start);
    if (tok.empty()) throw PreconditionError("empty coefficient in " + text);
    try {
      Rational q(tok, 10);
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      c.push_back(q);
    } catch (const std::invalid_argument&) {
      throw PreconditionError("bad coefficient '" + tok + "'");
    }
    start = comma + 1;
  }
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::lead() const {
  if (c_.empty()) throw ContractError("zero polynomial has no leading coefficient");
  return c_.back();
}

Rational Poly::coeff(unsigned k) const { return k < c_.size() ? c_[k] : Rational(0); }

bool Poly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

std::vector<BigInt> Poly::integer_coeffs() const {
  if (!is_integral()) throw PreconditionError("polynomial must have integer coefficients");
  std::vector<BigInt> out;
  for (const Rational& q : c_) out.push_back(q.get_num());
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(-1); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& s) const {
  std::vector<Rational> r = c_;
  for (Rational& q : r) q *= s;
  return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw ContractError("division by the zero polynomial");
  std::vector<Rational> rem = c_;
  const int dd = d.degree();
  if (degree() < dd) return {Poly(), *this};
  std::vector<Rational> quo(static_cast<std::size_t>(degree() - dd + 1), 0);
  const Rational inv_lead = 1 / d.lead();
  for (int k = degree(); k >= dd; --k) {
    const Rational q = rem[static_cast<std::size_t>(k)] * inv_lead;
    if (q == 0) continue;
    quo[static_cast<std::size_t>(k - dd)] = q;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= q * d.c_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<unsigned long>(i));
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
  Rational v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

Poly Poly::monic() const { return is_zero() ? Poly() : scaled(1 / lead()); }

std::string Poly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational a = abs(c_[i]);
    const bool neg = c_[i] < 0;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const bool unit = a == 1 && i > 0;
    if (!unit) out += a.get_str();
    if (i > 0) out += (unit ? "" : "*") + std::string("x");
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  // Invariant: s0 a + t0 b = r0, s1 a + t1 b = r1.
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::monomial(1, 0), s1;
  Poly t0, t1 = Poly::monomial(1, 0);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {s0, t0, r0};
  const Rational k = 1 / r0.lead();
  return {s0.scaled(k), t0.scaled(k), r0.scaled(k)};
}

bool is_squarefree(const Poly& f) {
  if (f.degree() <= 0) return !f.is_zero();
  return gcd(f, f.derivative()).degree() == 0;
}

Rational resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int da = a.degree();
  const int db = b.degree();
  if (db == 0) {
    Rational v = 1;
    for (int i = 0; i < da; ++i) v *= b.lead();
    return v;
  }
  // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, a mod b).
  const Poly r = a.divmod(b).second;
  if (r.is_zero()) return 0;
  Rational v = resultant(b, r);
  for (int i = 0; i < da - r.degree(); ++i) v *= b.lead();
  if ((da * db) % 2 != 0) v = -v;
  return v;
}

Rational determinant(QMat m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const Rational inv = 1 / m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Rational sylvester_resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const std::size_t da = static_cast<std::size_t>(a.degree());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const std::size_t n = da + db;
  if (n == 0) return 1;
  QMat m(n, std::vector<Rational>(n, 0));
  // db shifted rows of a, then da shifted rows of b, high degree first.
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t k = 0; k <= da; ++k) m[r][r + k] = a.coeff(static_cast<unsigned>(da - k));
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t k = 0; k <= db; ++k) m[db + r][r + k] = b.coeff(static_cast<unsigned>(db - k));
  return determinant(std::move(m));
}

Rational discriminant(const Poly& f) {
  const int n = f.degree();
  if (n < 1) throw PreconditionError("discriminant needs degree >= 1");
  Rational d = resultant(f, f.derivative()) / f.lead();
  if ((n * (n - 1) / 2) % 2 != 0) d = -d;
  return d;
}

// ---- NumberField ----

NumberField::NumberField(Poly f) : f_(std::move(f)) {
  if (f_.degree() < 1) throw PreconditionError("defining polynomial needs degree >= 1");
  n_ = static_cast<unsigned>(f_.degree());
  // theta^n = -(1/c_n) sum_{i<n} c_i theta^i.
  for (unsigned k = 0; k < 2 * n_ - 1; ++k) {
    NFElement e{std::vector<Rational>(n_, 0)};
    if (k < n_) {
      e.c[k] = 1;
    } else {
      const NFElement& prev = powers_[k - 1];
      const Rational top = prev.c[n_ - 1];
      for (unsigned i = n_ - 1; i > 0; --i) e.c[i] = prev.c[i - 1];
      for (unsigned i = 0; i < n_; ++i) e.c[i] -= top * f_.coeff(i) / f_.lead();
    }
    powers_.push_back(std::move(e));
  }
}

void NumberField::check(const NFElement& a) const {
  if (a.c.size() != n_) throw ContractError("element has the wrong number of coordinates");
}

NFElement NumberField::zero() const { return NFElement{std::vector<Rational>(n_, 0)}; }
NFElement NumberField::one() const { return powers_[0]; }

NFElement NumberField::theta_power(unsigned k) const {
  if (k < powers_.size()) return powers_[k];
  return mul(powers_.back(), theta_power(k - static_cast<unsigned>(powers_.size() - 1)));
}

NFElement NumberField::from_rational(const Rational& r) const { return scale(one(), r); }

NFElement NumberField::from_poly(const Poly& p) const {
  NFElement out = zero();
  const Poly r = p.divmod(f_).second;
  for (unsigned i = 0; i < n_; ++i) out.c[i] = r.coeff(i);
  return out;
}

NFElement NumberField::from_coeffs(std::vector<Rational> c) const {
  if (c.size() > n_) throw PreconditionError("too many coordinates for the field degree");
  c.resize(n_, 0);
  for (Rational& q : c) q.canonicalize();
  return NFElement{std::move(c)};
}

Poly NumberField::to_poly(const NFElement& a) const {
  check(a);
  return Poly(a.c);
}

NFElement NumberField::add(const NFElement& a, const NFElement& b) const {
  check(a);
  check(b);
  NFElement out = a;
  for (unsigned i = 0; i < n_; ++i) out.c[i] += b.c[i];
  return out;
}

NFElement NumberField::scale(const NFElement& a, const Rational& s) const {
  check(a);
  NFElement out = a;
  for (Rational& q : out.c) q *= s;
  return out;
}

NFElement NumberField::mul(const NFElement& a, const NFElement& b) const {
  check(a);
  check(b);
  std::vector<Rational> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (a.c[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] += a.c[i] * b.c[j];
  }
  NFElement out = zero();
  for (unsigned k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    for (unsigned i = 0; i < n_; ++i) out.c[i] += prod[k] * powers_[k].c[i];
  }
  return out;
}

NFElement NumberField::inv(const NFElement& a) const {
  const ExtGcd e = ext_gcd(to_poly(a), f_);
  if (e.g.degree() != 0)
    throw DomainError("element is not invertible: it shares the factor " + (a == zero() ? f_.monic() : e.g).str() +
                      " with f");
  return from_poly(e.s);
}

QMat NumberField::mult_matrix(const NFElement& a) const {
  QMat m(n_, std::vector<Rational>(n_, 0));
  for (unsigned j = 0; j < n_; ++j) {
    const NFElement col = mul(a, powers_[j]);
    for (unsigned i = 0; i < n_; ++i) m[i][j] = col.c[i];
  }
  return m;
}

Rational NumberField::trace(const NFElement& a) const {
  const QMat m = mult_matrix(a);
  Rational t = 0;
  for (unsigned i = 0; i < n_; ++i) t += m[i][i];
  return t;
}

Rational NumberField::norm(const NFElement& a) const { return determinant(mult_matrix(a)); }

NFElement NumberField::derivative_element() const { return from_poly(f_.derivative()); }

bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den().get_mpz_t()) != 0;
}

bool norm_is_square(const NumberField& field, const NFElement& lambda) {
  if (lambda == field.zero()) throw PreconditionError("lambda must be nonzero");
  return is_rational_square(field.norm(lambda));
}

// ---- Kummer quadrics ----

namespace {

void require_kummer_field(const NumberField& field) {
  if (field.degree() != 6) throw PreconditionError("f must have degree 6");
  if (!is_squarefree(field.modulus())) throw PreconditionError("f is not squarefree");
}

// Tr(w theta^m) for m = 0 .. count - 1.
std::vector<Rational> shifted_traces(const NumberField& field, const NFElement& w, unsigned count) {
  std::vector<Rational> base;
  for (unsigned i = 0; i < field.degree(); ++i) base.push_back(field.trace(field.theta_power(i)));
  std::vector<Rational> out;
  NFElement cur = w;
  const NFElement theta = field.theta_power(1);
  for (unsigned m = 0; m < count; ++m) {
    Rational t = 0;
    for (unsigned i = 0; i < field.degree(); ++i) t += cur.c[i] * base[i];
    out.push_back(t);
    cur = field.mul(cur, theta);
  }
  return out;
}

}  // namespace

std::vector<Rational> euler_traces(const NumberField& field) {
  if (!is_squarefree(field.modulus())) throw PreconditionError("f is not squarefree");
  return shifted_traces(field, field.inv(field.derivative_element()), field.degree());
}

QuadricTriple trace_quadrics(const NumberField& field, const NFElement& lambda) {
  require_kummer_field(field);
  const NFElement w = field.mul(lambda, field.inv(field.derivative_element()));
  const std::vector<Rational> t = shifted_traces(field, w, 13);
  QuadricTriple q;
  for (unsigned k = 0; k < 3; ++k) {
    q.g[k].assign(6, std::vector<Rational>(6, 0));
    for (unsigned i = 0; i < 6; ++i)
      for (unsigned j = 0; j < 6; ++j) q.g[k][i][j] = t[k + i + j];
  }
  return q;
}

QuadricTriple kummer_quadrics(const NumberField& field, const NFElement& lambda) {
  require_kummer_field(field);
  if (!norm_is_square(field, lambda)) throw PreconditionError("N(lambda) is not a rational square");
  return trace_quadrics(field, lambda);
}

std::array<Rational, 3> evaluate_quadrics(const QuadricTriple& q, const NFElement& u) {
  std::array<Rational, 3> out{0, 0, 0};
  for (unsigned k = 0; k < 3; ++k) {
    const QMat& g = q.g[k];
    if (u.c.size() != g.size()) throw ContractError("point dimension does not match the quadrics");
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (u.c[i] == 0) continue;
      Rational row = 0;
      for (std::size_t j = 0; j < g.size(); ++j) row += g[i][j] * u.c[j];
      out[k] += u.c[i] * row;
    }
  }
  return out;
}

Rational trace_form_value(const NumberField& field, const NFElement& lambda, unsigned k, const NFElement& u) {
  NFElement x = field.mul(lambda, field.theta_power(k));
  x = field.mul(x, field.mul(u, u));
  x = field.mul(x, field.inv(field.derivative_element()));
  return field.trace(x);
}

// ---- rational points ----

namespace {

using I128 = __int128;

bool exact_sqrt(const I128& v, I128& root) {
  if (v < 0) return false;
  I128 r = static_cast<I128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  root = r;
  return r * r == v;
}

bool exact_sqrt(const BigInt& v, BigInt& root) {
  if (v < 0 || mpz_perfect_square_p(v.get_mpz_t()) == 0) return false;
  root = sqrt(v);
  return true;
}

I128 to_num(const BigInt& z, I128*) {
  // Caller guarantees |z| < 2^62.
  return static_cast<I128>(z.get_si());
}
BigInt to_num(const BigInt& z, BigInt*) { return z; }

BigInt to_big(const I128& v) {
  const bool neg = v < 0;
  unsigned __int128 m = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(m >> 64));
  BigInt lo(static_cast<unsigned long>(m & 0xFFFFFFFFFFFFFFFFULL));
  BigInt z = (hi << 64) + lo;
  return neg ? BigInt(-z) : z;
}

template <typename T>
struct IntQuadrics {
  std::array<std::array<std::array<T, 6>, 6>, 3> a;

  T value(unsigned k, const std::array<T, 6>& u) const {
    T s = 0;
    for (unsigned i = 0; i < 6; ++i)
      for (unsigned j = 0; j < 6; ++j) s += a[k][i][j] * u[i] * u[j];
    return s;
  }
};

template <typename T>
std::vector<std::array<T, 6>> search_box(const std::array<std::array<std::array<BigInt, 6>, 6>, 3>& big, int h) {
  IntQuadrics<T> q;
  for (unsigned k = 0; k < 3; ++k)
    for (unsigned i = 0; i < 6; ++i)
      for (unsigned j = 0; j < 6; ++j) q.a[k][i][j] = to_num(big[k][i][j], static_cast<T*>(nullptr));
  const auto& a0 = q.a[0];
  std::vector<std::array<T, 6>> hits;
  std::array<T, 6> u{};
  std::array<int, 5> idx{};
  std::fill(idx.begin(), idx.end(), -h);
  const T H = h;
  while (true) {
    for (unsigned i = 0; i < 5; ++i) u[i] = idx[i];
    // Q0 as A u5^2 + B u5 + C.
    const T A = a0[5][5];
    T B = 0;
    T C = 0;
    for (unsigned i = 0; i < 5; ++i) {
      B += 2 * a0[i][5] * u[i];
      for (unsigned j = 0; j < 5; ++j) C += a0[i][j] * u[i] * u[j];
    }
    std::vector<T> cand;
    if (A != 0) {
      T root;
      if (exact_sqrt(T(B * B - 4 * A * C), root)) {
        for (const T& num : {T(-B + root), T(-B - root)}) {
          if (num % (2 * A) != 0) continue;
          const T x = num / (2 * A);
          if (x >= -H && x <= H && (cand.empty() || cand[0] != x)) cand.push_back(x);
        }
      }
    } else if (B != 0) {
      if (C % B == 0) {
        const T x = -C / B;
        if (x >= -H && x <= H) cand.push_back(x);
      }
    } else if (C == 0) {
      for (int x = -h; x <= h; ++x) cand.push_back(T(x));
    }
    for (const T& x : cand) {
      u[5] = x;
      if (q.value(0, u) == 0 && q.value(1, u) == 0 && q.value(2, u) == 0) hits.push_back(u);
    }
    unsigned p = 0;
    while (p < 5 && idx[p] == h) idx[p++] = -h;
    if (p == 5) break;
    ++idx[p];
  }
  return hits;
}

}  // namespace

std::vector<std::vector<BigInt>> rational_point_search(const QuadricTriple& q, unsigned height) {
  if (height > 50) throw PreconditionError("height must be at most 50");
  for (const QMat& g : q.g)
    if (g.size() != 6) throw ContractError("quadrics must be 6 x 6");
  // Clear denominators per quadric.
  std::array<std::array<std::array<BigInt, 6>, 6>, 3> big;
  BigInt max_entry = 0;
  for (unsigned k = 0; k < 3; ++k) {
    BigInt den = 1;
    for (const auto& row : q.g[k])
      for (const Rational& r : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    for (unsigned i = 0; i < 6; ++i)
      for (unsigned j = 0; j < 6; ++j) {
        const Rational v = q.g[k][i][j] * den;
        big[k][i][j] = v.get_num();
        if (abs(v.get_num()) > max_entry) max_entry = abs(v.get_num());
      }
  }
  const int h = static_cast<int>(height);
  std::vector<std::vector<BigInt>> raw;
  // |B^2 - 4AC| <= 200 M^2 h^2 stays below 2^126 when M < 2^50.
  if (max_entry < (BigInt(1) << 50)) {
    for (const auto& u : search_box<I128>(big, h)) {
      std::vector<BigInt> v;
      for (const I128& x : u) v.push_back(to_big(x));
      raw.push_back(std::move(v));
    }
  } else {
    for (const auto& u : search_box<BigInt>(big, h)) raw.emplace_back(u.begin(), u.end());
  }
  std::vector<std::vector<BigInt>> out;
  for (const auto& u : raw) {
    BigInt g = 0;
    for (const BigInt& x : u) g = gcd(g, x);
    if (g != 1) continue;
    const auto first = std::find_if(u.begin(), u.end(), [](const BigInt& x) { return x != 0; });
    if (*first < 0) continue;
    out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- primes and discriminants ----

PrimeConditionReport disc_and_p0(const Poly& f, unsigned bound) {
  if (!f.is_integral()) throw PreconditionError("f must have integer coefficients");
  const Rational d = discriminant(f);
  if (d == 0) throw PreconditionError("discriminant is zero: f is not squarefree");
  if (d.get_den() != 1) throw ContractError("discriminant of an integral polynomial must be an integer");
  PrimeConditionReport r;
  r.disc = d.get_num();
  r.leading = f.lead().get_num();
  r.bound = bound;
  BigInt rest = abs(r.disc);
  for (unsigned long p = 2; p <= bound && rest > 1; ++p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e == 0) continue;
    r.factored[p] = e;
    if (p % 2 == 1 && e == 1 && mpz_divisible_ui_p(r.leading.get_mpz_t(), p) == 0) r.primes.push_back(p);
  }
  r.cofactor = rest;
  return r;
}

namespace {

using ModPoly = std::vector<std::uint64_t>;

struct Fp {
  std::uint64_t p;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p - 2;
    while (e != 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  static void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  static int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

  ModPoly monic(ModPoly a) const {
    if (a.empty()) return a;
    const std::uint64_t li = inv(a.back());
    for (auto& x : a) x = mul(x, li);
    return a;
  }

  // Remainder and optional quotient of a by monic m.
  ModPoly rem(ModPoly a, const ModPoly& m, ModPoly* quo = nullptr) const {
    const int dm = deg(m);
    if (quo != nullptr) quo->assign(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
    for (int k = deg(a); k >= dm; --k) {
      const std::uint64_t c = a[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      if (quo != nullptr) (*quo)[static_cast<std::size_t>(k - dm)] = c;
      for (int j = 0; j <= dm; ++j) {
        auto& t = a[static_cast<std::size_t>(k - dm + j)];
        t = sub(t, mul(c, m[static_cast<std::size_t>(j)]));
      }
    }
    trim(a);
    return a;
  }

  ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) const {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul(a[i], b[j])) % p;
    trim(r);
    return rem(std::move(r), m);
  }

  ModPoly powmod(ModPoly a, std::uint64_t e, const ModPoly& m) const {
    ModPoly r{1};
    r = rem(r, m);
    a = rem(a, m);
    while (e != 0) {
      if (e & 1U) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  }

  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = rem(a, monic(b));
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
};

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<unsigned> factor_degrees_mod_p(const Poly& f, std::uint64_t p) {
  if (p < 2 || p >= (1ULL << 32) || !is_prime_u64(p)) throw PreconditionError("p must be a prime below 2^32");
  const std::vector<BigInt> zc = f.integer_coeffs();
  if (zc.empty()) throw PreconditionError("f must be nonzero");
  const Fp F{p};
  ModPoly g;
  for (const BigInt& z : zc) {
    BigInt r = z % BigInt(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    g.push_back(r.get_ui());
  }
  if (g.back() == 0) return {};
  g = F.monic(g);
  if (Fp::deg(g) == 0) return {};
  ModPoly dg;
  for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(F.mul(g[i], i % p));
  Fp::trim(dg);
  if (dg.empty() || Fp::deg(F.gcd(g, dg)) > 0) return {};

  std::vector<unsigned> degs;
  const ModPoly x{0, 1};
  ModPoly h = F.rem(x, g);
  for (unsigned i = 1; Fp::deg(g) >= static_cast<int>(2 * i); ++i) {
    h = F.powmod(h, p, g);
    ModPoly hx = h;
    hx.resize(std::max<std::size_t>(hx.size(), 2), 0);
    hx[1] = F.sub(hx[1], 1);
    Fp::trim(hx);
    const ModPoly d = F.gcd(g, hx);
    if (Fp::deg(d) > 0) {
      for (int t = 0; t < Fp::deg(d) / static_cast<int>(i); ++t) degs.push_back(i);
      ModPoly q;
      F.rem(g, d, &q);
      g = q;
      h = F.rem(h, g);
    }
  }
  if (Fp::deg(g) > 0) degs.push_back(static_cast<unsigned>(Fp::deg(g)));
  std::sort(degs.begin(), degs.end());
  return degs;
}

GaloisCertificate galois_s6_certificate(const Poly& f, unsigned prime_budget, unsigned threads) {
  if (f.degree() != 6) throw PreconditionError("f must have degree 6");
  if (!f.is_integral()) throw PreconditionError("f must have integer coefficients");
  if (!is_squarefree(f)) throw PreconditionError("f is not squarefree");
  const BigInt bad = discriminant(f).get_num() * f.lead().get_num();
  threads = std::max(1U, threads);

  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 3; primes.size() < prime_budget; p += 2)
    if (is_prime_u64(p)) primes.push_back(p);

  GaloisCertificate cert;
  const std::vector<unsigned> k6{6}, k51{1, 5}, k2{1, 1, 1, 1, 2};
  for (std::size_t start = 0; start < primes.size() && !cert.certified(); start += threads) {
    const std::size_t end = std::min(primes.size(), start + threads);
    std::vector<std::vector<unsigned>> pats(end - start);
    std::vector<std::uint8_t> skip(end - start, 0);
    auto work = [&](std::size_t i) {
      const std::uint64_t p = primes[start + i];
      if (mpz_divisible_ui_p(bad.get_mpz_t(), p) != 0)
        skip[i] = 1;
      else
        pats[i] = factor_degrees_mod_p(f, p);
    };
    if (threads == 1 || end - start == 1) {
      for (std::size_t i = 0; i < end - start; ++i) work(i);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t i = 0; i < end - start; ++i) pool.emplace_back(work, i);
      for (auto& t : pool) t.join();
    }
    // Fold in prime order so the result ignores the thread count.
    for (std::size_t i = 0; i < end - start && !cert.certified(); ++i) {
      ++cert.primes_used;
      if (skip[i]) continue;
      const std::uint64_t p = primes[start + i];
      if (pats[i].empty()) throw ContractError("unramified prime gave no factorization");
      ++cert.pattern_counts[pats[i]];
      if (pats[i] == k6 && !cert.p6) cert.p6 = p;
      if (pats[i] == k51 && !cert.p51) cert.p51 = p;
      if (pats[i] == k2 && !cert.p2) cert.p2 = p;
    }
  }
  return cert;
}

std::string to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

}  // namespace twistlab

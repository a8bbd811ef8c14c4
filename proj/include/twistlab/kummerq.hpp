#pragma once

// Exact arithmetic in F = Q[x]/(f) for a squarefree f, the three Kummer
// quadrics of a genus 2 curve y^2 = f(x) with deg f = 6, discriminant and
// prime conditions, and Galois certification by Frobenius cycle types.
// Everything is exact over GMP rationals.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Dense univariate polynomial over Q, coefficients low to high. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly from_integers(const std::vector<BigInt>& coeffs);
  static Poly monomial(const Rational& c, unsigned k);
  /// "[c0,c1,...]" with integer or "num/den" entries, optionally quoted.
  static Poly parse(const std::string& text);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const;
  Rational coeff(unsigned k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_integral() const;
  std::vector<BigInt> integer_coeffs() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  /// Quotient and remainder; throws ContractError for a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly derivative() const;
  Rational eval(const Rational& x) const;
  Poly monic() const;
  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// s, t, g with s a + t b = g = gcd(a, b).
struct ExtGcd {
  Poly s, t, g;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);
bool is_squarefree(const Poly& f);

/// Res(a, b) by the Euclidean remainder sequence over Q.
Rational resultant(const Poly& a, const Poly& b);
/// Res(a, b) as the determinant of the Sylvester matrix.
Rational sylvester_resultant(const Poly& a, const Poly& b);
/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / c_f.
Rational discriminant(const Poly& f);

using QMat = std::vector<std::vector<Rational>>;
Rational determinant(QMat m);

/// Coordinates over 1, theta, ..., theta^(n-1).
struct NFElement {
  std::vector<Rational> c;
  bool operator==(const NFElement& o) const { return c == o.c; }
};

/// Q[x]/(f) with theta the image of x. Stores theta^k reduced mod f for
/// k < 2n - 1. f needs degree >= 1; it need not be irreducible.
class NumberField {
 public:
  explicit NumberField(Poly f);

  unsigned degree() const { return n_; }
  const Poly& modulus() const { return f_; }

  NFElement zero() const;
  NFElement one() const;
  NFElement theta_power(unsigned k) const;
  NFElement from_rational(const Rational& r) const;
  NFElement from_poly(const Poly& p) const;
  NFElement from_coeffs(std::vector<Rational> c) const;
  Poly to_poly(const NFElement& a) const;

  NFElement add(const NFElement& a, const NFElement& b) const;
  NFElement scale(const NFElement& a, const Rational& s) const;
  NFElement mul(const NFElement& a, const NFElement& b) const;
  /// Throws DomainError naming gcd(a, f) when it is nonconstant.
  NFElement inv(const NFElement& a) const;
  /// Column j is a * theta^j.
  QMat mult_matrix(const NFElement& a) const;
  Rational trace(const NFElement& a) const;
  Rational norm(const NFElement& a) const;
  /// f'(theta).
  NFElement derivative_element() const;

 private:
  void check(const NFElement& a) const;
  Poly f_;
  unsigned n_;
  std::vector<NFElement> powers_;
};

bool is_rational_square(const Rational& q);
/// N(lambda) in Q^2. Requires lambda != 0.
bool norm_is_square(const NumberField& field, const NFElement& lambda);

/// G[k][i][j] = Tr(lambda theta^(k+i+j) / f'(theta)).
struct QuadricTriple {
  std::array<QMat, 3> g;
};

/// Tr(theta^k / f'(theta)) for k = 0 .. n - 1.
std::vector<Rational> euler_traces(const NumberField& field);
/// The trace forms without the norm precondition. Requires deg f = 6 and f
/// squarefree.
QuadricTriple trace_quadrics(const NumberField& field, const NFElement& lambda);
/// Also requires N(lambda) to be a square.
QuadricTriple kummer_quadrics(const NumberField& field, const NFElement& lambda);
std::array<Rational, 3> evaluate_quadrics(const QuadricTriple& q, const NFElement& u);
/// Tr(lambda theta^k u^2 / f'(theta)) through field arithmetic.
Rational trace_form_value(const NumberField& field, const NFElement& lambda, unsigned k, const NFElement& u);

/// Primitive integer u with |u_i| <= height and Q_k(u) = 0 for all k, one per
/// projective point (first nonzero coordinate positive), in lexicographic
/// order. Cost grows like (2 height + 1)^5.
std::vector<std::vector<BigInt>> rational_point_search(const QuadricTriple& q, unsigned height);

struct PrimeConditionReport {
  BigInt disc;
  BigInt leading;
  unsigned bound = 0;
  /// Odd p <= bound with ord_p disc = 1 and ord_p c_f = 0.
  std::vector<std::uint64_t> primes;
  /// Every p <= bound dividing disc, with its exponent.
  std::map<std::uint64_t, unsigned> factored;
  /// |disc| with all primes <= bound removed.
  BigInt cofactor;
};

/// Requires integral f; throws PreconditionError on zero discriminant.
PrimeConditionReport disc_and_p0(const Poly& f, unsigned bound);

/// Factor degrees of f mod p, ascending; empty when p | c_f or f mod p is
/// not squarefree. Distinct-degree factorization only.
std::vector<unsigned> factor_degrees_mod_p(const Poly& f, std::uint64_t p);

struct GaloisCertificate {
  std::optional<std::uint64_t> p6, p51, p2;
  /// Primes examined, counting skipped ones.
  unsigned primes_used = 0;
  /// Factor-degree pattern -> number of unramified primes showing it.
  std::map<std::vector<unsigned>, unsigned> pattern_counts;
  bool certified() const { return p6 && p51 && p2; }
};

/// Scans odd primes from 3 upward, skipping p | c_f disc, until patterns
/// [6], [1,5] and [1,1,1,1,2] have all appeared or the budget is spent. A
/// 6-cycle makes the group transitive; a transitive subgroup of S6 with a
/// 5-cycle is 2-transitive, hence primitive, and a primitive group with a
/// transposition is symmetric. The result does not depend on threads.
GaloisCertificate galois_s6_certificate(const Poly& f, unsigned prime_budget, unsigned threads = 1);

std::string to_string(const Rational& q);

}  // namespace twistlab

#pragma once

// Independent oracles for the number field layer: residues at infinity for
// the Euler traces, Berlekamp counting for cycle types, the Gram transform under a change of
// variables, and a corpus loader.

#include <gmpxx.h>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef TWISTLAB_TEST_DATA
#define TWISTLAB_TEST_DATA "tests/data"
#endif

namespace oracle {

struct CorpusSextic {
  std::vector<mpz_class> coeffs;  // c0 .. c6
  mpz_class disc;                 // computed by an outside CAS
};

inline std::vector<CorpusSextic> load_corpus() {
  std::ifstream in(std::string(TWISTLAB_TEST_DATA) + "/sextics.txt");
  std::vector<CorpusSextic> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    CorpusSextic s;
    std::string tok;
    for (int i = 0; i < 7 && ss >> tok; ++i) s.coeffs.emplace_back(tok, 10);
    ss >> tok;
    s.disc = mpz_class(tok, 10);
    out.push_back(s);
  }
  return out;
}

/// sum over roots of a^k / f'(a), as the 1/x coefficient of x^k / f(x) at
/// infinity: x^k / f = x^(k-n) / c_n * sum_j s_j x^-j with
/// 1 / (1 + sum_i b_i y^i) = sum_j s_j y^j, b_i = c_(n-i) / c_n.
inline std::vector<mpq_class> euler_by_residues(const std::vector<mpq_class>& c, unsigned kmax) {
  const std::size_t n = c.size() - 1;
  std::vector<mpq_class> s(kmax + 1, 0);
  s[0] = 1;
  for (std::size_t j = 1; j <= kmax; ++j) {
    mpq_class v = 0;
    for (std::size_t i = 1; i <= j && i <= n; ++i) v -= c[n - i] / c[n] * s[j - i];
    s[j] = v;
  }
  std::vector<mpq_class> out;
  for (unsigned k = 0; k <= kmax; ++k) {
    // Need k - n - j = -1.
    const long j = static_cast<long>(k) + 1 - static_cast<long>(n);
    out.push_back(j < 0 ? mpq_class(0) : mpq_class(s[static_cast<std::size_t>(j)] / c[n]));
  }
  return out;
}

/// (number of distinct irreducible factors, number of roots) of f mod p by
/// Berlekamp rank and direct evaluation. f monic mod p, squarefree, small p.
inline std::pair<unsigned, unsigned> berlekamp_counts(const std::vector<mpz_class>& coeffs, std::uint64_t p) {
  std::vector<std::int64_t> f;
  for (const auto& z : coeffs) {
    mpz_class r = z % mpz_class(static_cast<unsigned long>(p));
    if (r < 0) r += static_cast<unsigned long>(p);
    f.push_back(static_cast<std::int64_t>(r.get_ui()));
  }
  const std::int64_t P = static_cast<std::int64_t>(p);
  auto pw = [P](std::int64_t a, std::int64_t e) {
    std::int64_t r = 1;
    a %= P;
    while (e) {
      if (e & 1) r = r * a % P;
      a = a * a % P;
      e >>= 1;
    }
    return r;
  };
  const std::size_t n = f.size() - 1;
  const std::int64_t li = pw(f[n], P - 2);
  for (auto& v : f) v = v * li % P;
  unsigned roots = 0;
  for (std::int64_t x = 0; x < P; ++x) {
    std::int64_t v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % P;
    roots += v == 0;
  }
  // Multiply by x modulo f, p times per row step.
  auto times_x = [&](std::vector<std::int64_t> a) {
    const std::int64_t top = a[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) a[i] = a[i - 1];
    a[0] = 0;
    for (std::size_t i = 0; i < n; ++i) a[i] = ((a[i] - top * f[i]) % P + P) % P;
    return a;
  };
  std::vector<std::vector<std::int64_t>> q;
  std::vector<std::int64_t> cur(n, 0);
  cur[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    q.push_back(cur);
    for (std::uint64_t t = 0; t < p; ++t) cur = times_x(cur);
  }
  for (std::size_t i = 0; i < n; ++i) q[i][i] = (q[i][i] + P - 1) % P;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && q[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(q[piv], q[rank]);
    const std::int64_t inv = pw(q[rank][col], P - 2);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == rank || q[r][col] == 0) continue;
      const std::int64_t m = q[r][col] * inv % P;
      for (std::size_t c2 = 0; c2 < n; ++c2) q[r][c2] = ((q[r][c2] - m * q[rank][c2]) % P + P) % P;
    }
    ++rank;
  }
  return {static_cast<unsigned>(n - rank), roots};
}

/// t M^T G M, entry by entry.
inline std::vector<std::vector<mpq_class>> gram_transform(const std::vector<std::vector<mpq_class>>& g,
                                                          const std::vector<std::vector<mpq_class>>& m,
                                                          const mpq_class& t) {
  const std::size_t n = g.size();
  std::vector<std::vector<mpq_class>> out(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class s = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) s += m[a][i] * g[a][b] * m[b][j];
      out[i][j] = t * s;
    }
  return out;
}

}  // namespace oracle

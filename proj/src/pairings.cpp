#include "twistlab/pairings.hpp"

#include <bit>

#include "twistlab/bits.hpp"
#include "twistlab/error.hpp"

namespace twistlab {

namespace {

void check_dim(unsigned n, unsigned max) {
  if (n == 0 || n > max) throw ContractError("pairing dimension out of range");
}

AdmissiblePairing from_table(unsigned n, std::uint64_t table, std::uint32_t c, bool r) {
  AdmissiblePairing p;
  p.n = n;
  p.c = c;
  p.r = r;
  for (unsigned i = 0; i < n; ++i) p.gram.push_back(static_cast<std::uint32_t>((table >> (i * n)) & low_mask(n)));
  return p;
}

bool radical_is_line(const AdmissiblePairing& p, std::uint32_t a) {
  const auto basis = radical_basis(p);
  return basis.size() == 1 && basis[0] == a;
}

}  // namespace

bool AdmissiblePairing::value(std::uint32_t x, std::uint32_t y) const {
  bool v = false;
  for (unsigned i = 0; i < n; ++i)
    if ((x >> i) & 1U) v ^= parity(gram[i] & y);
  return v;
}

bool is_admissible(const AdmissiblePairing& p) {
  check_dim(p.n, kMaxPairingDim);
  for (std::uint32_t x = 0; x < (1U << p.n); ++x)
    if (p.value(x, x) != p.value(x, p.c)) return false;
  return p.value(p.c, p.c) == (((p.n & 1U) != 0) != p.r);
}

std::vector<std::uint32_t> radical_basis(const AdmissiblePairing& p) {
  check_dim(p.n, kMaxPairingDim);
  std::vector<std::uint64_t> rows;
  for (unsigned j = 0; j < p.n; ++j) {
    std::uint64_t form = 0;
    for (unsigned i = 0; i < p.n; ++i)
      if ((p.gram[i] >> j) & 1U) form |= 1ULL << i;
    rows.push_back(form);
  }
  std::vector<std::uint32_t> out;
  for (std::uint64_t v : kernel64(rows, p.n)) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

std::vector<std::uint32_t> radical_elements(const AdmissiblePairing& p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < (1U << p.n); ++x) {
    bool in = true;
    for (unsigned j = 0; j < p.n && in; ++j) in = !p.value(x, 1U << j);
    if (in) out.push_back(x);
  }
  return out;
}

RadicalSearch exists_with_radical(unsigned n, std::uint32_t c, bool r, std::uint32_t a) {
  check_dim(n, kMaxPairingDim);
  if (a == 0) throw PreconditionError("target vector a must be nonzero");
  if ((a >> n) != 0 || (c >> n) != 0) throw PreconditionError("a and c must lie in F2^n");
  RadicalSearch out;
  if (c == 0 && (((n & 1U) != 0) != r)) {
    out.reason = "c = 0 forces P(c,c) = 0, so n + r must be even; no admissible pairing exists";
    return out;
  }
  if (!r) {
    out.reason = "a radical equal to <a> forces 2P(c,c) = n - 1 mod 2, so r must be odd";
    return out;
  }
  // Basis a, then the unit vectors other than the lowest bit of a.
  const unsigned k = n - 1;
  const unsigned pa = static_cast<unsigned>(std::countr_zero(a));
  std::vector<std::uint32_t> cols{a};
  for (unsigned t = 0; t < n; ++t)
    if (t != pa) cols.push_back(1U << t);
  const SmallMat basis_inv = *SmallMat::from_columns(cols).inverse();
  auto w_coords = [&](std::uint32_t x) { return basis_inv.apply(x) >> 1; };
  const std::uint32_t cbar = w_coords(c);

  std::vector<std::uint32_t> wgram(k, 0);
  if (cbar == 0) {
    if (k % 2 != 0) {
      out.reason = "c lies in <a>, so S/<a> (odd dimension n - 1) would carry a nondegenerate alternating form";
      return out;
    }
    for (unsigned i = 0; i + 1 < k; i += 2) {
      wgram[i] |= 1U << (i + 1);
      wgram[i + 1] |= 1U << i;
    }
  } else {
    // g = h t with t(1,...,1) = e_1 and h e_1 = cbar; Gram of B is (g^-1)^T g^-1.
    const unsigned pc = static_cast<unsigned>(std::countr_zero(cbar));
    std::vector<std::uint32_t> hcols{cbar};
    for (unsigned t = 0; t < k; ++t)
      if (t != pc) hcols.push_back(1U << t);
    std::vector<std::uint32_t> tinv_cols{static_cast<std::uint32_t>(low_mask(k))};
    for (unsigned t = 1; t < k; ++t) tinv_cols.push_back(1U << t);
    const SmallMat g = SmallMat::from_columns(hcols) * *SmallMat::from_columns(tinv_cols).inverse();
    const SmallMat gi = *g.inverse();
    const SmallMat m = gi.transpose() * gi;
    for (unsigned i = 0; i < k; ++i) wgram[i] = m.row(i);
  }
  AdmissiblePairing p;
  p.n = n;
  p.c = c;
  p.r = r;
  p.gram.assign(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    const std::uint32_t xi = w_coords(1U << i);
    for (unsigned j = 0; j < n; ++j) {
      const std::uint32_t yj = w_coords(1U << j);
      bool v = false;
      for (unsigned s = 0; s < k; ++s)
        if ((xi >> s) & 1U) v ^= parity(wgram[s] & yj);
      if (v) p.gram[i] |= 1U << j;
    }
  }
  if (!is_admissible(p) || !radical_is_line(p, a)) throw ContractError("constructed pairing failed verification");
  out.pairing = p;
  return out;
}

RadicalSearch search_with_radical(unsigned n, std::uint32_t c, bool r, std::uint32_t a) {
  check_dim(n, 4);
  if (a == 0) throw PreconditionError("target vector a must be nonzero");
  if ((a >> n) != 0 || (c >> n) != 0) throw PreconditionError("a and c must lie in F2^n");
  RadicalSearch out;
  for (std::uint64_t t = 0; t < (1ULL << (n * n)); ++t) {
    const AdmissiblePairing p = from_table(n, t, c, r);
    if (is_admissible(p) && radical_is_line(p, a)) {
      out.pairing = p;
      return out;
    }
  }
  out.reason = "no Gram table of dimension " + std::to_string(n) + " qualifies";
  return out;
}

std::vector<FeasibilityEntry> feasibility_table(unsigned n) {
  check_dim(n, 4);
  const std::uint32_t size = 1U << n;
  // feasible[(c * 2 + r) * size + a]
  std::vector<std::uint8_t> feasible(size * 2 * size, 0);
  for (std::uint64_t t = 0; t < (1ULL << (n * n)); ++t) {
    const AdmissiblePairing p = from_table(n, t, 0, false);
    const auto rad = radical_basis(p);
    if (rad.size() != 1) continue;
    const std::uint32_t a = rad[0];
    for (std::uint32_t c = 0; c < size; ++c) {
      bool ok = true;
      for (std::uint32_t x = 0; x < size && ok; ++x) ok = p.value(x, x) == p.value(x, c);
      if (!ok) continue;
      const bool r = p.value(c, c) != ((n & 1U) != 0);
      feasible[(c * 2 + (r ? 1 : 0)) * size + a] = 1;
    }
  }
  std::vector<FeasibilityEntry> out;
  for (std::uint32_t c = 0; c < size; ++c)
    for (int r = 0; r < 2; ++r)
      for (std::uint32_t a = 1; a < size; ++a)
        out.push_back({c, r != 0, a, feasible[(c * 2 + static_cast<std::uint32_t>(r)) * size + a] != 0});
  return out;
}

}  // namespace twistlab

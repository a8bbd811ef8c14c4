#pragma once

// Admissible pairings on S = F2^n (n <= 10). Values in {0, 1/2} are stored as
// bits: gram[i] holds P(e_i, e_j) in bit j, extended bilinearly.
//
// P is admissible for (c, r) when P(x, x) = P(x, c) for all x and the bit
// P(c, c) equals n + r mod 2. Such a P is symmetric.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

inline constexpr unsigned kMaxPairingDim = 10;

struct AdmissiblePairing {
  unsigned n = 0;
  std::vector<std::uint32_t> gram;
  std::uint32_t c = 0;
  bool r = false;

  bool value(std::uint32_t x, std::uint32_t y) const;
};

/// Exhaustive over all x in S.
bool is_admissible(const AdmissiblePairing& p);

/// Left radical {x : P(x, y) = 0 for all y}, as a basis.
std::vector<std::uint32_t> radical_basis(const AdmissiblePairing& p);
/// Every element of the left radical, ascending.
std::vector<std::uint32_t> radical_elements(const AdmissiblePairing& p);

struct RadicalSearch {
  std::optional<AdmissiblePairing> pairing;
  /// Why no pairing exists, when absent.
  std::string reason;
};

/// Closed form: a pairing exists iff r = 1 and (c is not in {0, a} or n is
/// odd). With rad P = <a>, P induces a nondegenerate symmetric form on
/// W = S/<a> whose characteristic element (B(x, x) = B(x, u)) is the image
/// of c, and such an element always has B(u, u) = dim W mod 2; so
/// P(c, c) = n - 1 and r is odd. u = 0 needs an alternating form, so even
/// dim W. Otherwise B(x, y) = I(g^-1 x, g^-1 y) with g(1,...,1) = u is one.
/// Throws PreconditionError when a = 0 or a, c lie outside S.
RadicalSearch exists_with_radical(unsigned n, std::uint32_t c, bool r, std::uint32_t a);

/// Exhaustive search over all 2^(n^2) Gram tables, n <= 4, first hit in
/// increasing table order.
RadicalSearch search_with_radical(unsigned n, std::uint32_t c, bool r, std::uint32_t a);

struct FeasibilityEntry {
  std::uint32_t c = 0;
  bool r = false;
  std::uint32_t a = 0;
  bool feasible = false;
};

/// Every (c, r, a != 0) for dim n <= 4, decided by one exhaustive pass over
/// Gram tables.
std::vector<FeasibilityEntry> feasibility_table(unsigned n);

}  // namespace twistlab

#pragma once

// The trinomial f(x) = a0 x + a1 x^q + a2 x^{q^2} over F_{q^k}: its Dickson-type
// matrices D_eps, and the transfer of the permutation property from F_{q^k}
// to F_{q^{2k}} when N(a0) + N(a2) = 0.
//
// Towers here come from Tower::make_with_degree(p, h, k): F_K is F_{q^k} and
// the quadratic level, when present, is F_{q^{2k}}.

#include <cstdint>

#include "capgeom/linalg.hpp"
#include "capgeom/tower.hpp"

namespace capgeom {

/// Row i holds a0^{q^i}, a1^{q^i}, a2^{q^i} at columns i, i+1, i+2 (mod k);
/// entries that wrap past column k-1 are multiplied by eps. Throws KTooSmall for k < 3.
Matrix build_d_matrix(const Tower& t, Code a0, Code a1, Code a2, int eps);

Code d_determinant(const Tower& t, const Matrix& d);

/// f permutes the given level (F_K or F_{K^2}) iff its F_q-linear kernel is trivial.
/// Throws TooLarge above max_size elements.
bool is_permutation(const Tower& t, Code a0, Code a1, Code a2, Level level, std::uint64_t max_size = 1u << 20);

struct FerReport {
  bool perm_on_K = false;
  bool perm_on_K2 = false;
  Code det_plus = 0;   // det D_1
  Code det_minus = 0;  // det D_{-1}
  /// det D_1 != 0 and det D_{-1} != 0, the determinant criterion for F_{q^{2k}}.
  bool det_criterion = false;

  bool transfer_holds() const noexcept { return perm_on_K == perm_on_K2; }
  bool criterion_agrees() const noexcept { return det_criterion == perm_on_K2; }
};

/// Throws NormConditionFails unless N(a0) + N(a2) = 0 in F_q.
FerReport check_fer(const Tower& t, Code a0, Code a1, Code a2);

}  // namespace capgeom

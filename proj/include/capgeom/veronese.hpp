#pragma once

// The symmetric-matrix model: points M(a_0, ..., a_n) of PG(W), W an F_q-space
// of dimension (n+1)(2n+1), the Veronese varieties V_{alpha_1..alpha_n}, their
// chordal varieties (n = 1), and the projection onto the pair (a_0, a_1).

#include <cstdint>
#include <vector>

#include "capgeom/linalg.hpp"
#include "capgeom/pgspace.hpp"
#include "capgeom/tower.hpp"

namespace capgeom {

/// (a_0, ..., a_n) over F_K, normalized so that the first nonzero F_q-digit
/// (a_0's digits first, then a_1's, ...) equals 1.
struct SymPoint {
  std::vector<Code> a;

  friend bool operator==(const SymPoint&, const SymPoint&) = default;
  friend auto operator<=>(const SymPoint&, const SymPoint&) = default;
};

/// Throws ZeroVector for the all-zero tuple, InvalidArgument for a length other than n+1.
SymPoint normalize_sym(const Tower& t, std::vector<Code> a);

/// (2n+1)x(2n+1) over F_K. For 1 <= i <= j, d = j - i:
/// m_ij = a_d^{q^{i-1}} if d <= n, else a_{2n+1-d}^{q^{j-1}}; m_ji = m_ij.
Matrix sym_matrix(const Tower& t, const std::vector<Code>& a);

std::size_t sym_rank(const Tower& t, const std::vector<Code>& a);

/// M(x^2, alpha_1 x^{q+1}, ..., alpha_n x^{q^n+1}), x in F_K*; sorted. Throws ZeroAlpha.
std::vector<SymPoint> veronese_variety(const Tower& t, const std::vector<Code>& alphas);

/// psi: M(a_0, a_1, ...) -> M(a_0, alpha_1 a_1, ...).
SymPoint apply_psi(const Tower& t, const SymPoint& P, const std::vector<Code>& alphas);
/// phi~^i: M(a_0, ..., a_n) -> M(eta^{2i} a_0, ..., eta^{(q^n+1)i} a_n), eta the generator of F_K.
SymPoint apply_phi_tilde(const Tower& t, const SymPoint& P, long long i);

/// n = 1: rank M(a_0, alpha^{-1} a_1) <= 2. Throws NOnlyOne otherwise.
bool chordal_test(const Tower& t, const SymPoint& P, Code alpha);

/// n = 1: all points of PG(W) on both chordal varieties S_1 and S_alpha, ascending.
std::vector<SymPoint> chordal_intersection(const Tower& t, Code alpha);

/// normalize(a_0, a_1). Throws ZeroPair when a_0 = a_1 = 0.
ProjPoint project_to_V(const Tower& t, const SymPoint& P);

struct RankCensus {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> by_rank;  // index = rank
};

/// n = 1 only; exhaustive over PG(W).
RankCensus rank_census(const Tower& t);

struct WPartitionReport {
  bool exhaustive = false;
  /// Points with every coordinate nonzero that were examined.
  std::uint64_t points_checked = 0;
  std::uint64_t varieties = 0;
  std::uint64_t variety_size = 0;
  /// Points whose brute-force label set is not a single tuple (must be 0).
  std::uint64_t ambiguous = 0;
  /// Exhaustive mode: generated points hit twice (0) and admissible points missed (0).
  std::uint64_t overlaps = 0;
  std::uint64_t uncovered = 0;
  /// Sampled mode: generated points whose label differs from the generating tuple (0).
  std::uint64_t label_mismatches = 0;
  bool ok = false;
};

/// All tuples (alpha_1..alpha_n) with P on V_alpha, found by trying every y in F_K*.
std::vector<std::vector<Code>> brute_force_labels(const Tower& t, const SymPoint& P);

/// n = 1: exhaustive. n >= 2: `samples` random generated points plus `samples`
/// random points with nonzero coordinates, drawn from `seed`.
/// Throws TooLarge (n = 1) when PG(W) has more than max_space points.
WPartitionReport verify_w_partition(const Tower& t, std::uint64_t max_space = 1'000'000,
                                    std::uint64_t samples = 2000, std::uint64_t seed = 1);

}  // namespace capgeom

#pragma once

// A cap of N points in PG(r-1, q) is the column set of a parity-check matrix
// of an [N, N-r, d]_q code; d >= 4 iff no three points are collinear, and
// covering radius 2 iff the cap is complete.
//
// Syndromes are F_q^r vectors packed as sum d_i q^i, the same encoding as
// point keys, so vector addition is digit-wise addition in base p.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "capgeom/capcon.hpp"
#include "capgeom/linalg.hpp"

namespace capgeom {

struct ParityCheck {
  std::uint32_t p = 0;
  unsigned h = 0;
  unsigned n = 0;
  std::uint32_t q = 0;
  Matrix entries;  // rows x N over F_q

  std::size_t rows() const noexcept { return entries.rows(); }
  std::size_t cols() const noexcept { return entries.cols(); }
  /// Column j packed as sum_i H(i, j) q^i.
  std::uint64_t column_key(std::size_t j) const;
};

/// Column j is the F_q-coordinate vector of cap point j.
ParityCheck parity_check(const Tower& t, const CapSet& cap);
ParityCheck parity_check(const Tower& t, const std::vector<ProjPoint>& points);

constexpr int kNoDependency = std::numeric_limits<int>::max();

struct DistanceResult {
  /// Smallest number of dependent columns; kNoDependency when the columns are independent.
  int value = kNoDependency;
  /// False when only "value is a lower bound" could be established (no dependency of weight <= 4).
  bool exact = true;
  /// Columns and coefficients of a dependency of weight `value`.
  std::vector<std::pair<std::size_t, Code>> witness;
};

/// Throws TooSmall when N < 4, TooLarge when q^rows exceeds 2^24.
DistanceResult min_distance(const Field& fq, const ParityCheck& H);

struct RadiusResult {
  /// Largest BFS depth needed; -1 when some syndrome is unreachable (columns do not span).
  int radius = -1;
  std::uint64_t syndromes = 0;
  /// Syndromes at each distance 0, 1, 2, ...
  std::vector<std::uint64_t> layer_sizes;
};

/// Breadth-first search over F_q^rows from 0 with steps c * h_j.
/// Throws TooLarge when q^rows exceeds max_syndromes.
RadiusResult covering_radius(const Field& fq, const ParityCheck& H, std::uint64_t max_syndromes = 1u << 22);

struct CodeReport {
  std::size_t N = 0;
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::size_t k = 0;  // N - rank
  DistanceResult distance;
  RadiusResult radius;
  double distance_seconds = 0;
  double radius_seconds = 0;

  /// [N, N-r, 4]_q with covering radius 2.
  bool as_expected() const noexcept {
    return rank == rows && distance.exact && distance.value == 4 && radius.radius == 2;
  }
};

CodeReport code_report(const Field& fq, const ParityCheck& H);

/// Header "q p h n N", then one line per row of space-separated F_q codes.
void write_parity_check(std::ostream& os, const ParityCheck& H);
/// Throws Format on malformed input.
ParityCheck read_parity_check(std::istream& is);

}  // namespace capgeom

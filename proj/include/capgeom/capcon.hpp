#pragma once

// The varieties V_w = { P(x^2, w x^{q+1}) : x in F_K* }, the cap V_1 ∪ V_alpha,
// the projectivity phi: v(a, b) -> v(eta^2 a, eta^{q+1} b), and the labeling of
// points by the variety (or the subspace Pi_1 / Pi_2) that contains them.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "capgeom/pgspace.hpp"
#include "capgeom/tower.hpp"

namespace capgeom {

enum class CapTag : std::uint8_t { V1, Valpha };

std::string_view cap_tag_name(CapTag t) noexcept;

struct CapSet {
  Code alpha = 0;
  std::vector<ProjPoint> points;
  std::vector<CapTag> labels;

  std::size_t count(CapTag t) const;
  std::vector<ProjPoint> with_tag(CapTag t) const;
};

struct OmegaLabel {
  enum class Kind : std::uint8_t { Pi1, Pi2, Omega };
  Kind kind = Kind::Omega;
  Code omega = 0;

  friend bool operator==(const OmegaLabel&, const OmegaLabel&) = default;
};

/// Label plus the data that realizes it: P = lambda0 * (x0^2, omega x0^{q+1})
/// for Omega labels, lambda0 in {1, nu}.
struct LabelWitness {
  OmegaLabel label;
  Code lambda0 = 1;
  Code x0 = 0;
};

/// (K - 1)/(q - 1).
std::uint64_t variety_size(const Tower& t);

/// Sorted ascending. Throws ZeroOmega.
std::vector<ProjPoint> veronese_cap(const Tower& t, Code omega);

/// -1 for odd q, the generator of F_q for even q.
Code pick_alpha(const Tower& t);

/// Smallest non-square of F_q (odd q); 0 when q is even.
Code smallest_nonsquare(const Tower& t);

/// V_1 points (ascending) followed by V_alpha points (ascending).
/// A non-default alpha must lie in F_q \ {0, 1} (and equal -1 when q is odd).
CapSet build_cap(const Tower& t, std::optional<Code> alpha = std::nullopt);

/// Human-readable list of broken CapSet invariants; empty when all hold.
std::vector<std::string> cap_invariant_problems(const Tower& t, const CapSet& cap);

ProjPoint apply_phi(const Tower& t, const ProjPoint& P, long long i);

OmegaLabel omega_label(const Tower& t, const ProjPoint& P);
LabelWitness label_with_witness(const Tower& t, const ProjPoint& P);

/// Flat membership table over all vector keys.
class PointIndex {
 public:
  PointIndex(const Tower& t, std::span<const ProjPoint> points);

  /// Position of P in the indexed list, or -1.
  std::int32_t find(const ProjPoint& P) const { return slots_[point_key(*tower_, P)]; }
  std::int32_t find_key(PointKey k) const { return slots_[k]; }
  bool contains(const ProjPoint& P) const { return find(P) >= 0; }
  /// Points listed more than once.
  const std::vector<ProjPoint>& duplicates() const noexcept { return duplicates_; }

 private:
  const Tower* tower_;
  std::vector<std::int32_t> slots_;
  std::vector<ProjPoint> duplicates_;
};

struct CapReport {
  std::size_t size = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::array<ProjPoint, 3>> violations;  // first few collinear triples
  std::vector<ProjPoint> duplicates;
  double seconds = 0;

  bool is_cap() const noexcept { return violation_count == 0 && duplicates.empty(); }
};

/// Chord-membership check: every interior point of every chord must be off the set.
CapReport verify_cap(const Tower& t, std::span<const ProjPoint> points, unsigned threads = 1);
inline CapReport verify_cap(const Tower& t, const CapSet& cap, unsigned threads = 1) {
  return verify_cap(t, cap.points, threads);
}

struct PartitionReport {
  std::uint64_t total_points = 0;
  std::uint64_t pi1 = 0;
  std::uint64_t pi2 = 0;
  std::uint64_t omega_classes = 0;
  std::uint64_t min_class = 0;
  std::uint64_t max_class = 0;
  /// Points of the generated varieties V_w hit more than once (must be 0).
  std::uint64_t overlaps = 0;
  /// Points off Pi_1 ∪ Pi_2 missed by every generated variety (must be 0).
  std::uint64_t uncovered = 0;
  /// Generated points whose label disagrees with the generating w (must be 0).
  std::uint64_t label_mismatches = 0;
  bool ok = false;
};

/// Throws TooLarge when the space has more than max_space points.
PartitionReport verify_partition(const Tower& t, std::uint64_t max_space = 1'000'000);

}  // namespace capgeom

#pragma once

// Completeness of V_1 ∪ V_alpha: every point off the cap lies on a line joining
// a point of V_1 to a point of V_alpha, and on exactly one such line.
//
// cover_canonical solves the problem for R = P(1, w); cover_point moves an
// arbitrary R there with v(c, d) -> v(x0^2 c, x0^{q+1} d), which fixes every V_w.

#include <array>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "capgeom/capcon.hpp"

namespace capgeom {

/// Coefficients (a0, a1, a2) of y -> a0 y + a1 y^q + a2 y^{q^2}.
using LinTriple = std::array<Code, 3>;

struct LinPolyPair {
  LinTriple f1;
  LinTriple f2;
};

/// q odd, w not in {0, 1, -1}. With chi = (w^2 - 1)^{(q-1)/2}:
/// F1 = (chi, w^q + w chi, 1), F2 = (-chi, w^q - w chi, 1). Throws BadOmega.
LinPolyPair f1_f2(const Tower& t, Code omega);

/// Evaluates a0 y + a1 y^q + a2 y^{q^2} in F_K.
Code eval_linearized(const Tower& t, const LinTriple& f, Code y);

struct CanonicalCover {
  Code x = 0;
  Code y = 0;
  Code lambda = 1;  // in F_q*
  Code rho = 1;     // in F_q*
  /// q odd only: whether w^2 - 1 is a square of F_K (the explicit branch).
  bool square_case = false;
};

/// x, y in F_K*, lambda, rho in F_q* with
///   q odd:  x^2 + lambda y^2 = rho,  x^{q+1} - lambda y^{q+1} = rho w;
///   q even: x^2 + y^2 = 1,           x^{q+1} + alpha y^{q+1} = w   (lambda = rho = 1).
/// Throws BadOmega for w in {0, 1, alpha}; InternalContradiction if the result fails its own check.
CanonicalCover cover_canonical(const Tower& t, Code omega, Code alpha);

struct CoverCertificate {
  ProjPoint R;
  ProjPoint P;  // on V_1
  ProjPoint Q;  // on V_alpha
  Code c1 = 1;
  Code c2 = 1;
};

/// Throws PointInCap when R lies on V_1 ∪ V_alpha.
CoverCertificate cover_point(const Tower& t, const CapSet& cap, const ProjPoint& R);

/// Nonzero coefficients, P on V_1, Q on V_alpha, and c1 P + c2 Q normalizes to R.
bool check_certificate(const Tower& t, Code alpha, const CoverCertificate& c);

enum class CoverMode : std::uint8_t { Exhaustive, Certificate };

std::string_view cover_mode_name(CoverMode m) noexcept;

struct CompletenessReport {
  CoverMode mode = CoverMode::Exhaustive;
  std::uint64_t external_points = 0;
  std::uint64_t expected_external = 0;  // (q-1) |V_1| |V_alpha|
  std::uint64_t bisecants = 0;
  std::uint64_t covered_once = 0;
  std::uint64_t multiply_covered = 0;
  std::uint64_t uncovered = 0;
  /// Exhaustive: cap points lying inside a bisecant. Must be 0.
  std::uint64_t cap_points_hit = 0;
  /// Certificate: certificates failing re-verification or naming points outside the set.
  std::uint64_t invalid_certificates = 0;
  /// Number of bisecants through a point -> number of external points.
  std::map<std::uint32_t, std::uint64_t> histogram;
  /// Indexed by point key; the bisecant (i * |V_alpha| + j) covering the point, or kNoPair.
  std::vector<std::uint32_t> pair_of;
  double seconds = 0;

  static constexpr std::uint32_t kNoPair = 0xffffffffu;

  bool complete() const noexcept { return uncovered == 0 && invalid_certificates == 0; }
  bool exactly_once() const noexcept {
    return complete() && multiply_covered == 0 && cap_points_hit == 0 && covered_once == external_points;
  }
};

struct CompletenessOptions {
  CoverMode mode = CoverMode::Exhaustive;
  unsigned threads = 1;
  std::uint64_t max_space = 2'000'000;
  bool keep_pairs = false;
};

/// The bisecants are the lines joining a V1-tagged point to a Valpha-tagged point of cap.
/// Throws TooLarge when the space exceeds opts.max_space points.
CompletenessReport verify_complete(const Tower& t, const CapSet& cap, const CompletenessOptions& opts = {});

}  // namespace capgeom

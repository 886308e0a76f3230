#pragma once

// Field model of PG(4n+1, q): the point P(a, b), a, b in F_K, is spanned by
// v(a, b) = (a, b, a^q, b^q, ...). Since v is injective and F_q-linear, all
// incidence questions are answered on the F_q-coordinates of (a, b): the
// F_q-digits of a followed by those of b. Packed into one integer this is the
// key a + K*b, which is also the F_{K^2} code of a + b*w, so scaling by F_q*
// and adding vectors reuse the top level's tables.

#include <compare>
#include <cstdint>
#include <vector>

#include "capgeom/tower.hpp"

namespace capgeom {

struct ProjPoint {
  Code a = 0;
  Code b = 0;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  /// Ascending canonical order: by b, then a (i.e. by key).
  friend std::strong_ordering operator<=>(const ProjPoint& x, const ProjPoint& y) {
    if (auto c = x.b <=> y.b; c != 0) return c;
    return x.a <=> y.a;
  }
};

using PointKey = std::uint32_t;

inline PointKey point_key(const Tower& t, const ProjPoint& P) { return P.a + t.K() * P.b; }
inline ProjPoint point_from_key(const Tower& t, PointKey k) { return {k % t.K(), k / t.K()}; }

/// Number of points (K^2 - 1)/(q - 1).
std::uint64_t point_count(const Tower& t);

/// Canonical representative of a nonzero vector key: first nonzero F_q-coordinate is 1.
PointKey normalize_key(const Tower& t, PointKey v);
bool is_normalized_key(const Tower& t, PointKey v);
/// Raw vector key of c1*u + c2*v with c1, c2 in F_q.
PointKey combine_keys(const Tower& t, PointKey u, Code c1, PointKey v, Code c2);

/// Throws ZeroVector for (0, 0).
ProjPoint normalize(const Tower& t, Code a, Code b);

/// Throws DuplicatePoint unless the three points are pairwise distinct.
bool collinear(const Tower& t, const ProjPoint& P1, const ProjPoint& P2, const ProjPoint& P3);

/// The q+1 points P1, P2 and P1 + d*P2 (d in F_q*), in that order.
std::vector<ProjPoint> line_points(const Tower& t, const ProjPoint& P1, const ProjPoint& P2);

/// Visits every canonical point once, in ascending key order.
template <class Fn>
void for_each_point(const Tower& t, Fn&& fn) {
  const PointKey end = static_cast<PointKey>(static_cast<std::uint64_t>(t.K()) * t.K());
  for (PointKey k = 1; k < end; ++k) {
    if (is_normalized_key(t, k)) fn(point_from_key(t, k));
  }
}

std::vector<ProjPoint> enumerate_points(const Tower& t);

}  // namespace capgeom

#include "capgeom/pgspace.hpp"

#include "capgeom/error.hpp"
#include "capgeom/linalg.hpp"

namespace capgeom {

std::uint64_t point_count(const Tower& t) {
  const std::uint64_t k2 = static_cast<std::uint64_t>(t.K()) * t.K();
  return (k2 - 1) / (t.q() - 1);
}

namespace {

Code lowest_digit(PointKey v, std::uint32_t q) {
  while (v % q == 0) v /= q;
  return v % q;
}

}  // namespace

bool is_normalized_key(const Tower& t, PointKey v) { return v != 0 && lowest_digit(v, t.q()) == 1; }

PointKey normalize_key(const Tower& t, PointKey v) {
  if (v == 0) throw Error(Errc::ZeroVector, "zero vector has no projective point");
  const Code d = lowest_digit(v, t.q());
  if (d == 1) return v;
  return t.fk2().mul(v, t.fq().inv(d));
}

PointKey combine_keys(const Tower& t, PointKey u, Code c1, PointKey v, Code c2) {
  const Field& L = t.fk2();
  return L.add(L.mul(c1, u), L.mul(c2, v));
}

ProjPoint normalize(const Tower& t, Code a, Code b) {
  if (a >= t.K() || b >= t.K()) throw Error(Errc::InvalidArgument, "coordinate outside F_K");
  return point_from_key(t, normalize_key(t, a + t.K() * b));
}

bool collinear(const Tower& t, const ProjPoint& P1, const ProjPoint& P2, const ProjPoint& P3) {
  if (P1 == P2 || P1 == P3 || P2 == P3) throw Error(Errc::DuplicatePoint, "collinear needs distinct points");
  const unsigned cols = 2 * t.m();
  const std::uint32_t q = t.q();
  Matrix M(3, cols);
  const ProjPoint* pts[3] = {&P1, &P2, &P3};
  for (std::size_t r = 0; r < 3; ++r) {
    PointKey k = point_key(t, *pts[r]);
    for (unsigned c = 0; c < cols; ++c) {
      M(r, c) = k % q;
      k /= q;
    }
  }
  return rank(t.fq(), M) <= 2;
}

std::vector<ProjPoint> line_points(const Tower& t, const ProjPoint& P1, const ProjPoint& P2) {
  if (P1 == P2) throw Error(Errc::DuplicatePoint, "a line needs two distinct points");
  std::vector<ProjPoint> out{P1, P2};
  const PointKey u = point_key(t, P1);
  const PointKey v = point_key(t, P2);
  for (Code d = 1; d < t.q(); ++d) out.push_back(point_from_key(t, normalize_key(t, combine_keys(t, u, 1, v, d))));
  return out;
}

std::vector<ProjPoint> enumerate_points(const Tower& t) {
  std::vector<ProjPoint> out;
  out.reserve(point_count(t));
  for_each_point(t, [&](const ProjPoint& P) { out.push_back(P); });
  return out;
}

}  // namespace capgeom

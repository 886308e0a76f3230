#include "capgeom/codes.hpp"

#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>

#include "capgeom/error.hpp"

namespace capgeom {

namespace {

using Vec = std::uint64_t;

struct Space {
  std::uint32_t p;
  std::uint32_t q;
  std::size_t r;
  std::uint64_t size;
};

Space space_of(const ParityCheck& H, std::uint64_t limit) {
  Space s{H.p, H.q, H.rows(), 1};
  for (std::size_t i = 0; i < s.r; ++i) {
    s.size *= H.q;
    if (s.size > limit) throw Error(Errc::TooLarge, "syndrome space exceeds the configured bound");
  }
  return s;
}

// Digit-wise sum of two packed vectors: base-p addition is exact because F_q
// codes are themselves base-p digit strings.
Vec vadd(Vec a, Vec b, std::uint32_t p) {
  Vec out = 0, w = 1;
  while (a != 0 || b != 0) {
    out += ((a % p + b % p) % p) * w;
    a /= p;
    b /= p;
    w *= p;
  }
  return out;
}

Vec vscale(const Field& fq, Vec a, Code c) {
  const std::uint32_t q = fq.size();
  Vec out = 0, w = 1;
  for (; a != 0; a /= q, w *= q) out += static_cast<Vec>(fq.mul(static_cast<Code>(a % q), c)) * w;
  return out;
}

// Scale so the lowest nonzero digit is 1; returns the scalar used.
Vec vnormalize(const Field& fq, Vec a, Code* used = nullptr) {
  const std::uint32_t q = fq.size();
  Vec v = a;
  while (v != 0 && v % q == 0) v /= q;
  if (v == 0) return 0;
  const Code s = fq.inv(static_cast<Code>(v % q));
  if (used != nullptr) *used = s;
  return vscale(fq, a, s);
}

}  // namespace

std::uint64_t ParityCheck::column_key(std::size_t j) const {
  std::uint64_t k = 0, w = 1;
  for (std::size_t i = 0; i < rows(); ++i, w *= q) k += static_cast<std::uint64_t>(entries(i, j)) * w;
  return k;
}

ParityCheck parity_check(const Tower& t, const std::vector<ProjPoint>& points) {
  ParityCheck H;
  H.p = t.p();
  H.h = t.h();
  H.n = t.n();
  H.q = t.q();
  const std::size_t r = 2 * t.m();
  H.entries = Matrix(r, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    PointKey k = point_key(t, points[j]);
    for (std::size_t i = 0; i < r; ++i, k /= t.q()) H.entries(i, j) = k % t.q();
  }
  return H;
}

ParityCheck parity_check(const Tower& t, const CapSet& cap) { return parity_check(t, cap.points); }

DistanceResult min_distance(const Field& fq, const ParityCheck& H) {
  const std::size_t N = H.cols();
  if (N < 4) throw Error(Errc::TooSmall, "need at least 4 columns");
  const Space sp = space_of(H, 1u << 24);
  const std::uint32_t q = H.q;
  DistanceResult res;

  std::vector<Vec> col(N), unit(N);
  std::vector<Code> unit_scale(N, 1);
  for (std::size_t j = 0; j < N; ++j) {
    col[j] = H.column_key(j);
    if (col[j] == 0) {
      res.value = 1;
      res.witness = {{j, 1}};
      return res;
    }
    unit[j] = vnormalize(fq, col[j], &unit_scale[j]);
  }

  // Weight 2: proportional columns. owner[v] = 1 + index of the column whose normalization is v.
  std::vector<std::uint32_t> owner(sp.size, 0);
  for (std::size_t j = 0; j < N; ++j) {
    if (owner[unit[j]] != 0) {
      const std::size_t i = owner[unit[j]] - 1;
      // unit = s_i col_i = s_j col_j  =>  s_i col_i - s_j col_j = 0
      res.value = 2;
      res.witness = {{i, unit_scale[i]}, {j, fq.neg(unit_scale[j])}};
      return res;
    }
    owner[unit[j]] = static_cast<std::uint32_t>(j + 1);
  }

  // Weight 3: some point of a chord is itself a column.
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      for (Code d = 1; d < q; ++d) {
        Code s = 1;
        const Vec v = vnormalize(fq, vadd(col[i], vscale(fq, col[j], d), sp.p), &s);
        if (v == 0) continue;
        const std::uint32_t o = owner[v];
        if (o != 0 && o - 1 != i && o - 1 != j) {
          // s (col_i + d col_j) = s_k col_k
          const std::size_t k = o - 1;
          res.value = 3;
          res.witness = {{i, s}, {j, fq.mul(s, d)}, {k, fq.neg(unit_scale[k])}};
          return res;
        }
      }
    }
  }

  // Weight 4: two chords through a common point.
  struct Hit {
    std::uint32_t i, j;
    Code d, s;
  };
  std::vector<Hit> first(sp.size, Hit{0, 0, 0, 0});
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      for (Code d = 1; d < q; ++d) {
        Code s = 1;
        const Vec v = vnormalize(fq, vadd(col[i], vscale(fq, col[j], d), sp.p), &s);
        if (v == 0) continue;
        Hit& h = first[v];
        if (h.d == 0) {
          h = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), d, s};
          continue;
        }
        if (h.i == i || h.i == j || h.j == i || h.j == j) continue;
        // s (col_i + d col_j) = h.s (col_hi + h.d col_hj)
        res.value = 4;
        res.witness = {{i, s}, {j, fq.mul(s, d)}, {h.i, fq.neg(h.s)}, {h.j, fq.neg(fq.mul(h.s, h.d))}};
        return res;
      }
    }
  }

  if (rank(fq, H.entries) == N) {
    res.value = kNoDependency;
  } else {
    res.value = 5;
    res.exact = false;
  }
  return res;
}

RadiusResult covering_radius(const Field& fq, const ParityCheck& H, std::uint64_t max_syndromes) {
  const Space sp = space_of(H, max_syndromes);
  RadiusResult res;
  res.syndromes = sp.size;
  std::vector<Vec> steps;
  for (std::size_t j = 0; j < H.cols(); ++j) {
    const Vec c = H.column_key(j);
    if (c == 0) continue;
    for (Code a = 1; a < H.q; ++a) steps.push_back(vscale(fq, c, a));
  }
  std::vector<std::int8_t> dist(sp.size, -1);
  std::vector<Vec> frontier{0}, next;
  dist[0] = 0;
  std::uint64_t reached = 1;
  res.layer_sizes.push_back(1);
  int depth = 0;
  while (!frontier.empty() && reached < sp.size) {
    ++depth;
    next.clear();
    for (Vec s : frontier) {
      for (Vec st : steps) {
        const Vec u = vadd(s, st, sp.p);
        if (dist[u] >= 0) continue;
        dist[u] = static_cast<std::int8_t>(depth);
        next.push_back(u);
      }
    }
    reached += next.size();
    if (!next.empty()) res.layer_sizes.push_back(next.size());
    frontier.swap(next);
  }
  res.radius = reached == sp.size ? static_cast<int>(res.layer_sizes.size()) - 1 : -1;
  return res;
}

CodeReport code_report(const Field& fq, const ParityCheck& H) {
  CodeReport rep;
  rep.N = H.cols();
  rep.rows = H.rows();
  rep.rank = rank(fq, H.entries);
  rep.k = rep.N - rep.rank;
  auto t0 = std::chrono::steady_clock::now();
  rep.distance = min_distance(fq, H);
  auto t1 = std::chrono::steady_clock::now();
  rep.radius = covering_radius(fq, H);
  auto t2 = std::chrono::steady_clock::now();
  rep.distance_seconds = std::chrono::duration<double>(t1 - t0).count();
  rep.radius_seconds = std::chrono::duration<double>(t2 - t1).count();
  return rep;
}

void write_parity_check(std::ostream& os, const ParityCheck& H) {
  os << H.q << ' ' << H.p << ' ' << H.h << ' ' << H.n << ' ' << H.cols() << '\n';
  for (std::size_t i = 0; i < H.rows(); ++i) {
    for (std::size_t j = 0; j < H.cols(); ++j) {
      if (j != 0) os << ' ';
      os << H.entries(i, j);
    }
    os << '\n';
  }
}

ParityCheck read_parity_check(std::istream& is) {
  ParityCheck H;
  std::size_t N = 0;
  std::string header;
  if (!std::getline(is, header)) throw Error(Errc::Format, "missing header");
  std::istringstream hs(header);
  if (!(hs >> H.q >> H.p >> H.h >> H.n >> N)) throw Error(Errc::Format, "bad header");
  std::vector<std::vector<Code>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<Code> row;
    Code v;
    while (ls >> v) {
      if (v >= H.q) throw Error(Errc::Format, "entry outside F_q");
      row.push_back(v);
    }
    if (row.size() != N) throw Error(Errc::Format, "row length differs from N");
    rows.push_back(std::move(row));
  }
  if (rows.size() != 4 * H.n + 2) throw Error(Errc::Format, "expected 4n+2 rows");
  H.entries = Matrix(rows.size(), N);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < N; ++j) H.entries(i, j) = rows[i][j];
  return H;
}

}  // namespace capgeom

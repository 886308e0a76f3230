#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "capgeom/codes.hpp"
#include "capgeom/cover.hpp"
#include "capgeom/error.hpp"

using namespace capgeom;

namespace {

// H e over F_q computed entry by entry.
bool is_dependency(const Field& fq, const ParityCheck& H, const std::vector<std::pair<std::size_t, Code>>& e) {
  if (e.empty()) return false;
  for (const auto& [j, c] : e) {
    if (c == 0) return false;
  }
  for (std::size_t i = 0; i < H.rows(); ++i) {
    Code acc = 0;
    for (const auto& [j, c] : e) acc = fq.add(acc, fq.mul(c, H.entries(i, j)));
    if (acc != 0) return false;
  }
  return true;
}

Matrix columns(const ParityCheck& H, std::initializer_list<std::size_t> js) {
  Matrix m(H.rows(), js.size());
  std::size_t c = 0;
  for (auto j : js) {
    for (std::size_t i = 0; i < H.rows(); ++i) m(i, c) = H.entries(i, j);
    ++c;
  }
  return m;
}

// Syndromes reachable with at most `w` columns, by direct enumeration with digit vectors.
std::size_t coverage(const Field& fq, const ParityCheck& H, int w) {
  const std::size_t r = H.rows();
  auto pack = [&](const std::vector<Code>& v) {
    std::uint64_t k = 0, m = 1;
    for (std::size_t i = 0; i < r; ++i, m *= H.q) k += v[i] * m;
    return k;
  };
  std::set<std::uint64_t> seen{0};
  std::vector<Code> v(r);
  for (std::size_t a = 0; a < H.cols(); ++a) {
    for (Code ca = 1; ca < H.q; ++ca) {
      for (std::size_t i = 0; i < r; ++i) v[i] = fq.mul(ca, H.entries(i, a));
      seen.insert(pack(v));
      if (w < 2) continue;
      for (std::size_t b = a + 1; b < H.cols(); ++b) {
        for (Code cb = 1; cb < H.q; ++cb) {
          std::vector<Code> u(r);
          for (std::size_t i = 0; i < r; ++i) u[i] = fq.add(v[i], fq.mul(cb, H.entries(i, b)));
          seen.insert(pack(u));
        }
      }
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("parity_check dimensions and rank") {
  struct Row {
    unsigned p, h, n;
    std::size_t rows, cols;
  };
  for (auto r : {Row{3, 1, 1, 6, 26}, Row{2, 2, 1, 6, 42}, Row{3, 1, 2, 10, 242}}) {
    auto t = Tower::make(r.p, r.h, r.n);
    const auto cap = build_cap(t);
    const auto H = parity_check(t, cap);
    CHECK(H.rows() == r.rows);
    CHECK(H.cols() == r.cols);
    CHECK(rank(t.fq(), H.entries) == r.rows);
    for (std::size_t j = 0; j < H.cols(); ++j) CHECK(H.column_key(j) == point_key(t, cap.points[j]));
  }
}

TEST_CASE("minimum distance of the (3,1) code") {
  auto t = Tower::make(3, 1, 1);
  const Field& fq = t.fq();
  const auto H = parity_check(t, build_cap(t));
  // Every 3 columns independent.
  std::size_t triples = 0, independent = 0;
  for (std::size_t a = 0; a < 26; ++a)
    for (std::size_t b = a + 1; b < 26; ++b)
      for (std::size_t c = b + 1; c < 26; ++c) {
        ++triples;
        independent += rank(fq, columns(H, {a, b, c})) == 3;
      }
  CHECK(triples == 2600);
  CHECK(independent == 2600);

  const auto d = min_distance(fq, H);
  CHECK(d.value == 4);
  CHECK(d.exact);
  REQUIRE(d.witness.size() == 4);
  CHECK(is_dependency(fq, H, d.witness));
}

TEST_CASE("minimum distance: degenerate inputs") {
  auto t = Tower::make(3, 1, 1);
  const Field& fq = t.fq();
  ParityCheck I;
  I.p = 3;
  I.h = 1;
  I.n = 1;
  I.q = 3;
  I.entries = Matrix(6, 6);
  for (int i = 0; i < 6; ++i) I.entries(i, i) = 1;
  CHECK(min_distance(fq, I).value == kNoDependency);

  ParityCheck small = I;
  small.entries = Matrix(6, 3);
  CHECK_THROWS_AS(min_distance(fq, small), Error);

  // A collinear triple gives weight 3.
  const auto cap = build_cap(t);
  auto pts = cap.points;
  pts.push_back(line_points(t, pts[0], pts[1])[2]);
  const auto H = parity_check(t, pts);
  const auto d = min_distance(fq, H);
  CHECK(d.value == 3);
  CHECK(is_dependency(fq, H, d.witness));

  // Repeated column (up to scaling) gives weight 2.
  auto rep = cap.points;
  rep.push_back(cap.points[5]);
  const auto H2 = parity_check(t, rep);
  const auto d2 = min_distance(fq, H2);
  CHECK(d2.value == 2);
  CHECK(is_dependency(fq, H2, d2.witness));
}

TEST_CASE("covering radius") {
  auto t = Tower::make(3, 1, 1);
  const Field& fq = t.fq();
  const auto cap = build_cap(t);
  const auto H = parity_check(t, cap);
  const auto r = covering_radius(fq, H);
  CHECK(r.radius == 2);
  CHECK(r.syndromes == 729);
  CHECK(r.layer_sizes[0] == 1);
  CHECK(r.layer_sizes[1] == 52);
  CHECK(coverage(fq, H, 2) == 729);
  CHECK(coverage(fq, H, 1) < 729);

  // Without one point the deleted point's syndrome needs three columns.
  auto pts = cap.points;
  pts.erase(pts.begin() + 4);
  const auto Ht = parity_check(t, pts);
  const auto rt = covering_radius(fq, Ht);
  CHECK(rt.radius == 3);
  REQUIRE(rt.layer_sizes.size() == 4);
  CHECK(coverage(fq, Ht, 2) == rt.layer_sizes[0] + rt.layer_sizes[1] + rt.layer_sizes[2]);
  CHECK(coverage(fq, Ht, 2) < 729);

  CHECK_THROWS_AS(covering_radius(fq, H, 100), Error);
}

TEST_CASE("code reports") {
  struct Row {
    unsigned p, h, n;
    std::size_t N, k;
  };
  for (auto r : {Row{3, 1, 1, 26, 20}, Row{2, 2, 1, 42, 36}, Row{5, 1, 1, 62, 56}, Row{3, 1, 2, 242, 232}}) {
    auto t = Tower::make(r.p, r.h, r.n);
    const auto rep = code_report(t.fq(), parity_check(t, build_cap(t)));
    CHECK(rep.N == r.N);
    CHECK(rep.k == r.k);
    CHECK(rep.distance.value == 4);
    CHECK(rep.radius.radius == 2);
    CHECK(rep.as_expected());
  }
}

TEST_CASE("d >= 4 and radius <= 2 track the geometric checks") {
  for (auto [p, h] : {std::pair{3u, 1u}, {2u, 2u}}) {
    auto t = Tower::make(p, h, 1);
    const auto cap = build_cap(t);
    const auto H = parity_check(t, cap);
    CHECK((min_distance(t.fq(), H).value >= 4) == verify_cap(t, cap).is_cap());
    CHECK((covering_radius(t.fq(), H).radius <= 2) == verify_complete(t, cap).complete());
  }
}

TEST_CASE("export format round trip") {
  auto t = Tower::make(2, 2, 1);
  const auto H = parity_check(t, build_cap(t));
  std::stringstream ss;
  write_parity_check(ss, H);
  std::string first;
  std::getline(ss, first);
  CHECK(first == "4 2 2 1 42");
  ss.seekg(0);
  const auto back = read_parity_check(ss);
  CHECK(back.entries == H.entries);
  CHECK(back.q == 4);
  std::stringstream bad("4 2 2 1 42\n1 2 3\n");
  CHECK_THROWS_AS(read_parity_check(bad), Error);
}

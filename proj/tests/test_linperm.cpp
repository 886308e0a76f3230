#include <doctest.h>

#include <random>
#include <vector>

#include "capgeom/error.hpp"
#include "capgeom/linperm.hpp"

using namespace capgeom;

namespace {

struct QSpec {
  std::uint32_t p;
  unsigned h;
};

constexpr QSpec kQs[] = {{3, 1}, {2, 2}, {5, 1}};

// f permutes the level iff its value set has full size.
bool perm_oracle(const Tower& t, Code a0, Code a1, Code a2, Level level) {
  const Field& F = t.field(level);
  std::vector<bool> seen(F.size(), false);
  for (Code x = 0; x < F.size(); ++x) {
    const Code xq = F.pow(x, t.q()), xqq = F.pow(xq, t.q());
    const Code v = F.add(F.add(F.mul(a0, x), F.mul(a1, xq)), F.mul(a2, xqq));
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// Cofactor expansion along the first row: independent of the elimination routine.
Code det_oracle(const Field& F, const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Code acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) minor(r - 1, cc++) = m(r, k);
      }
    }
    Code term = F.mul(m(0, c), det_oracle(F, minor));
    if (c % 2 == 1) term = F.neg(term);
    acc = F.add(acc, term);
  }
  return acc;
}

// Random triple with N(a0) + N(a2) = 0.
std::array<Code, 3> norm_condition_triple(const Tower& t, std::mt19937& rng) {
  std::uniform_int_distribution<Code> d(0, t.K() - 1);
  const Field& Q = t.fq();
  for (;;) {
    const Code a0 = d(rng), a1 = d(rng), a2 = d(rng);
    if (Q.add(t.norm_to_q(a0), t.norm_to_q(a2)) == 0) return {a0, a1, a2};
  }
}

}  // namespace

TEST_CASE("D matrix layout") {
  auto t = Tower::make_with_degree(3, 1, 4, false);
  const Field& F = t.fk();
  const Code a0 = 5, a1 = 17, a2 = 40;
  const Matrix d = build_d_matrix(t, a0, a1, a2, -1);
  for (unsigned i = 0; i < 4; ++i) {
    const Code v[3] = {t.frob_code(Level::FK, a0, i), t.frob_code(Level::FK, a1, i), t.frob_code(Level::FK, a2, i)};
    for (unsigned j = 0; j < 4; ++j) {
      Code expect = 0;
      for (unsigned s = 0; s < 3; ++s) {
        if ((i + s) % 4 == j) expect = i + s >= 4 ? F.neg(v[s]) : v[s];
      }
      CHECK(d(i, j) == expect);
    }
  }
  CHECK_THROWS_AS(build_d_matrix(Tower::make_with_degree(3, 1, 2, false), 1, 0, 0, 1), Error);
  try {
    build_d_matrix(Tower::make_with_degree(3, 1, 2, false), 1, 0, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::KTooSmall);
  }
}

TEST_CASE("D matrix determinants: small cases") {
  auto t = Tower::make_with_degree(3, 1, 3, false);
  const Field& F = t.fk();
  CHECK(d_determinant(t, build_d_matrix(t, 1, 0, 0, 1)) == 1);
  CHECK(d_determinant(t, build_d_matrix(t, 1, 0, 0, -1)) == 1);
  std::mt19937 rng(2);
  std::uniform_int_distribution<Code> d(0, t.K() - 1);
  for (int i = 0; i < 50; ++i) {
    const Code a0 = d(rng), a2 = d(rng);
    const Code expect = F.add(t.norm_to_q(a0), t.norm_to_q(a2));
    CHECK(d_determinant(t, build_d_matrix(t, a0, 0, a2, 1)) == expect);
    CHECK(d_determinant(t, build_d_matrix(t, a0, 0, a2, -1)) == expect);
  }
}

TEST_CASE("det D_1 + det D_-1 = 2 (N(a0) + N(a2))") {
  for (const auto& qs : kQs) {
    for (unsigned k : {3u, 4u, 5u}) {
      auto t = Tower::make_with_degree(qs.p, qs.h, k, false);
      const Field& F = t.fk();
      std::mt19937 rng(1000 * qs.p + 10 * qs.h + k);
      std::uniform_int_distribution<Code> d(0, t.K() - 1);
      int exact = 0;
      for (int i = 0; i < 500; ++i) {
        const Code a0 = d(rng), a1 = d(rng), a2 = d(rng);
        const auto dp = build_d_matrix(t, a0, a1, a2, 1), dm = build_d_matrix(t, a0, a1, a2, -1);
        const Code lhs = F.add(d_determinant(t, dp), d_determinant(t, dm));
        const Code n = F.add(t.norm_to_q(a0), t.norm_to_q(a2));
        exact += lhs == F.add(n, n);
        if (i < 20) CHECK(d_determinant(t, dp) == det_oracle(F, dp));
      }
      CHECK(exact == 500);
    }
  }
}

TEST_CASE("is_permutation") {
  auto t = Tower::make_with_degree(3, 1, 3, true);
  CHECK(is_permutation(t, 1, 0, 0, Level::FK));
  CHECK(is_permutation(t, 0, 1, 0, Level::FK));
  const Code g = t.generator(Level::FK);
  CHECK(is_permutation(t, 1, 0, g, Level::FK) == perm_oracle(t, 1, 0, g, Level::FK));
  CHECK_FALSE(is_permutation(t, 1, 0, g, Level::FK));
  CHECK_THROWS_AS(is_permutation(t, 1, 0, 0, Level::FK2, 100), Error);

  for (const auto& qs : kQs) {
    auto tt = Tower::make_with_degree(qs.p, qs.h, 3, false);
    std::mt19937 rng(qs.p);
    std::uniform_int_distribution<Code> d(0, tt.K() - 1);
    for (int i = 0; i < 60; ++i) {
      const Code a0 = d(rng), a1 = d(rng), a2 = d(rng);
      const bool perm = is_permutation(tt, a0, a1, a2, Level::FK);
      CHECK(perm == perm_oracle(tt, a0, a1, a2, Level::FK));
      // Dickson criterion on F_{q^k}.
      CHECK(perm == (d_determinant(tt, build_d_matrix(tt, a0, a1, a2, 1)) != 0));
    }
  }
}

TEST_CASE("determinant criterion vs kernel, k in {3, 5}") {
  for (const auto& qs : kQs) {
    for (unsigned k : {3u, 5u}) {
      auto t = Tower::make_with_degree(qs.p, qs.h, k, false);
      std::mt19937 rng(77 * qs.p + k);
      std::uniform_int_distribution<Code> d(0, t.K() - 1);
      int agree = 0;
      for (int i = 0; i < 500; ++i) {
        const Code a0 = d(rng), a1 = d(rng), a2 = d(rng);
        // Bias a third of the trials toward singular maps.
        const Code b2 = i % 3 == 0 ? 0 : a2;
        const Code b0 = i % 3 == 0 ? 0 : a0;
        agree += is_permutation(t, b0, a1, b2, Level::FK) == (d_determinant(t, build_d_matrix(t, b0, a1, b2, 1)) != 0);
      }
      CHECK(agree == 500);
    }
  }
}

TEST_CASE("check_fer") {
  auto t = Tower::make_with_degree(3, 1, 3, true);
  const auto r0 = check_fer(t, 0, 1, 0);
  CHECK(r0.perm_on_K);
  CHECK(r0.perm_on_K2);
  CHECK(r0.transfer_holds());
  CHECK_THROWS_AS(check_fer(t, 1, 0, 0), Error);
  try {
    check_fer(t, 1, 0, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NormConditionFails);
  }

  for (const auto& qs : {QSpec{3, 1}, QSpec{2, 2}}) {
    auto tt = Tower::make_with_degree(qs.p, qs.h, 3, true);
    const Field& F = tt.fk();
    std::mt19937 rng(555 + qs.p);
    int transfer = 0, both_kinds = 0, swap = 0;
    for (int i = 0; i < 200; ++i) {
      const auto [a0, a1, a2] = norm_condition_triple(tt, rng);
      const auto r = check_fer(tt, a0, a1, a2);
      transfer += r.transfer_holds();
      both_kinds += r.perm_on_K;
      swap += r.det_plus == F.neg(r.det_minus);
      if (i < 25) {
        CHECK(r.perm_on_K == perm_oracle(tt, a0, a1, a2, Level::FK));
        CHECK(r.perm_on_K2 == perm_oracle(tt, a0, a1, a2, Level::FK2));
      }
      CHECK(r.criterion_agrees());
    }
    CHECK(transfer == 200);
    CHECK(swap == 200);
    CHECK(both_kinds > 0);
    CHECK(both_kinds < 200);
  }
}

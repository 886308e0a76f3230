#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "capgeom/error.hpp"
#include "capgeom/linalg.hpp"
#include "capgeom/tower.hpp"

using namespace capgeom;

namespace {

Code repeated_mul(const Field& F, Code x, unsigned times) {
  Code r = 1;
  for (unsigned i = 0; i < times; ++i) r = F.mul(r, x);
  return r;
}

// Evaluates a polynomial over F_p (p prime, h = 1) at a point with plain modular arithmetic.
std::uint32_t eval_mod_p(const std::vector<Code>& f, std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
  return static_cast<std::uint32_t>(acc);
}

}  // namespace

TEST_CASE("make_tower sizes and errors") {
  auto t31 = Tower::make(3, 1, 1);
  CHECK(t31.q() == 3);
  CHECK(t31.K() == 27);
  CHECK(t31.fk2().size() == 729);

  auto t221 = Tower::make(2, 2, 1);
  CHECK(t221.q() == 4);
  CHECK(t221.K() == 64);
  CHECK(t221.fk2().size() == 4096);

  try {
    (void)Tower::make(2, 1, 1);
    FAIL("expected QTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::QTooSmall);
  }
  try {
    (void)Tower::make(6, 1, 1);
    FAIL("expected NonPrime");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrime);
  }
}

TEST_CASE("modulus selection is deterministic and lexicographically smallest") {
  auto a = Tower::make(3, 1, 1);
  auto b = Tower::make(3, 1, 1);
  CHECK(a.modulus(Level::FK) == b.modulus(Level::FK));
  CHECK(a.modulus(Level::FK2) == b.modulus(Level::FK2));
  CHECK(a.generator(Level::FK2) == b.generator(Level::FK2));

  // Brute force: first monic cubic over F_3 without roots, (c0, c1, c2) ordered with c0 most significant.
  std::vector<Code> expected;
  for (Code c0 = 0; c0 < 3 && expected.empty(); ++c0)
    for (Code c1 = 0; c1 < 3 && expected.empty(); ++c1)
      for (Code c2 = 0; c2 < 3 && expected.empty(); ++c2) {
        std::vector<Code> f{c0, c1, c2, 1};
        bool root = false;
        for (Code x = 0; x < 3; ++x) root = root || eval_mod_p(f, x, 3) == 0;
        if (!root) expected = f;
      }
  CHECK(a.modulus(Level::FK) == expected);
  CHECK(a.modulus(Level::FK) == std::vector<Code>{1, 0, 2, 1});

  // The F_K^2 modulus x^2 + c1 x + c0 has no root in F_K.
  const auto& f3 = a.modulus(Level::FK2);
  REQUIRE(f3.size() == 3);
  const Field& K = a.fk();
  for (Code x = 0; x < K.size(); ++x) {
    CHECK(K.add(K.add(K.mul(x, x), K.mul(f3[1], x)), f3[0]) != 0);
  }
}

TEST_CASE("generators have full order at every level") {
  for (auto [p, h, n] : {std::tuple{3u, 1u, 1u}, {2u, 2u, 1u}, {5u, 1u, 1u}, {2u, 3u, 1u}}) {
    auto t = Tower::make(p, h, n);
    for (Level l : {Level::Fp, Level::Fq, Level::FK, Level::FK2}) {
      const Field& F = t.field(l);
      std::set<Code> seen;
      Code x = 1;
      for (std::uint32_t i = 0; i < F.order(); ++i) {
        seen.insert(x);
        x = F.mul(x, F.generator());
      }
      CHECK(seen.size() == F.order());
      CHECK(x == 1);
    }
  }
}

TEST_CASE("Fermat identity x^{|L|-1} = 1 exhaustively for |L| <= 729") {
  for (auto [p, h] : {std::pair{3u, 1u}, {2u, 2u}}) {
    auto t = Tower::make(p, h, 1);
    for (Level l : {Level::Fq, Level::FK, Level::FK2}) {
      const Field& F = t.field(l);
      if (F.size() > 729) continue;
      for (Code x = 1; x < F.size(); ++x) CHECK(F.pow(x, F.order()) == 1);
    }
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (auto [p, h] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto t = Tower::make(p, h, 1);
    const Field& F = t.fk2();
    std::uniform_int_distribution<Code> pick(0, F.size() - 1);
    for (int i = 0; i < 500; ++i) {
      Code a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == 0);
      CHECK(F.sub(F.add(a, b), b) == a);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
    }
  }
}

TEST_CASE("subfields are closed and embedded by code") {
  auto t = Tower::make(2, 2, 1);
  const Field& L = t.fk2();
  for (Code a = 0; a < t.q(); ++a)
    for (Code b = 0; b < t.q(); ++b) {
      CHECK(L.mul(a, b) == t.fq().mul(a, b));
      CHECK(L.mul(a, b) < t.q());
    }
  for (Code a = 0; a < t.K(); ++a) {
    CHECK(t.in_level(Elem{Level::FK2, a}, Level::FK));
    CHECK(t.in_level(Elem{Level::FK2, a}, Level::Fq) == (a < t.q()));
  }
  CHECK_THROWS_AS(t.embed(Elem{Level::FK, 5}, Level::Fq), Error);
}

TEST_CASE("frobenius") {
  auto t = Tower::make(3, 1, 1);
  const Field& K = t.fk();
  const Elem g{Level::FK, K.generator()};
  CHECK(t.frobenius(g, 0) == g);
  CHECK(t.frobenius(g, 1).code == repeated_mul(K, g.code, 3));
  CHECK(t.frobenius(g, 3) == g);
  CHECK(t.frobenius(g, -1) == t.frobenius(g, 2));
  for (Code x = 0; x < 3; ++x)
    for (long long i = 0; i < 4; ++i) CHECK(t.frobenius(Elem{Level::FK, x}, i).code == x);

  SUBCASE("automorphism on random pairs") {
    std::mt19937_64 rng(11);
    const Field& L = t.fk2();
    std::uniform_int_distribution<Code> pick(0, L.size() - 1);
    for (int i = 0; i < 200; ++i) {
      Elem a{Level::FK2, pick(rng)}, b{Level::FK2, pick(rng)};
      for (long long k : {1LL, 2LL, 5LL}) {
        CHECK(t.frobenius(t.add(a, b), k) == t.add(t.frobenius(a, k), t.frobenius(b, k)));
        CHECK(t.frobenius(t.mul(a, b), k) == t.mul(t.frobenius(a, k), t.frobenius(b, k)));
      }
    }
  }

  SUBCASE("fixed field of x -> x^{q^i} has q^{gcd(i, deg)} elements") {
    const Field& L = t.fk2();  // degree 6 over F_3
    for (unsigned i = 1; i <= 6; ++i) {
      std::size_t fixed = 0;
      for (Code x = 0; x < L.size(); ++x) fixed += t.frob_code(Level::FK2, x, i) == x;
      std::size_t expected = 1;
      for (unsigned k = 0; k < std::gcd(i, 6u); ++k) expected *= 3;
      CHECK(fixed == expected);
    }
  }
}

TEST_CASE("norm") {
  auto t = Tower::make(3, 1, 1);
  const Field& K = t.fk();
  CHECK(t.norm(Elem{Level::FK, 1}, Level::Fq).code == 1);
  CHECK(t.norm(Elem{Level::FK2, 1}, Level::Fq).code == 1);
  const Code g = K.generator();
  const Code oracle = repeated_mul(K, g, 13);
  CHECK(oracle == 2);
  CHECK(t.norm(Elem{Level::FK, g}, Level::Fq).code == oracle);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Code> pick(0, K.size() - 1);
  for (int i = 0; i < 100; ++i) {
    Elem a{Level::FK, pick(rng)}, b{Level::FK, pick(rng)};
    CHECK(t.norm(t.mul(a, b), Level::Fq) == t.mul(t.norm(a, Level::Fq), t.norm(b, Level::Fq)));
  }
  CHECK_THROWS_AS(t.norm(Elem{Level::Fq, 1}, Level::FK), Error);

  SUBCASE("surjective onto the target group") {
    for (auto [from, to] : {std::pair{Level::FK, Level::Fq}, {Level::FK2, Level::Fq}, {Level::FK2, Level::FK}}) {
      std::set<Code> image;
      for (Code x = 1; x < t.level_size(from); ++x) image.insert(t.norm(Elem{from, x}, to).code);
      CHECK(image.size() == t.level_size(to) - 1);
      CHECK(image.count(0) == 0);
    }
  }
}

TEST_CASE("squares and square roots") {
  SUBCASE("characteristic 2: every element is a square") {
    auto t = Tower::make(2, 2, 1);
    for (Level l : {Level::Fq, Level::FK}) {
      const Field& F = t.field(l);
      for (Code x = 0; x < F.size(); ++x) {
        const Elem r = t.sqrt(Elem{l, x});
        CHECK(F.mul(r.code, r.code) == x);
      }
    }
  }
  SUBCASE("F_27: a primitive element is not a square") {
    auto t = Tower::make(3, 1, 1);
    const Field& K = t.fk();
    std::set<Code> squares;
    for (Code x = 0; x < K.size(); ++x) squares.insert(K.mul(x, x));
    const Elem g{Level::FK, K.generator()};
    CHECK(squares.count(g.code) == 0);
    CHECK_FALSE(t.is_square(g));
    for (Code x = 0; x < K.size(); ++x) CHECK(t.is_square(Elem{Level::FK, x}) == (squares.count(x) == 1));
    try {
      (void)t.sqrt(g);
      FAIL("expected NotASquare");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotASquare);
    }
    for (Code s : squares) {
      const Elem r = t.sqrt(Elem{Level::FK, s});
      CHECK(K.mul(r.code, r.code) == s);
      CHECK(r.code <= K.neg(r.code));
    }
  }
  SUBCASE("F_5: sqrt(4) = 2") {
    auto t = Tower::make(5, 1, 1);
    CHECK(t.sqrt(Elem{Level::Fq, 4}).code == 2);
  }
}

TEST_CASE("baby-step giant-step agrees with the log table") {
  for (auto [p, h, n] : {std::tuple{3u, 1u, 1u}, {2u, 2u, 1u}, {3u, 1u, 2u}}) {
    auto t = Tower::make(p, h, n);
    for (Level l : {Level::Fq, Level::FK, Level::FK2}) {
      const Field& F = t.field(l);
      const Code step = std::max<Code>(1, F.size() / 997);
      for (Code x = 1; x < F.size(); x += step) {
        const auto k = t.dlog(Elem{l, x});
        CHECK(k == F.log(x));
        CHECK(F.pow(F.generator(), k) == x);
      }
    }
  }
}

TEST_CASE("solve_power") {
  auto t4 = Tower::make(2, 2, 1);
  CHECK(t4.solve_power(Elem{Level::FK, 1}, 5).code == 1);
  CHECK(5 * 38 % 63 == 1);
  const Field& K = t4.fk();
  for (Code c = 1; c < K.size(); ++c) {
    const Elem t = t4.solve_power(Elem{Level::FK, c}, 5);
    CHECK(K.pow(t.code, 5) == c);
    CHECK(t.code == K.pow(c, 38));
  }

  auto t3 = Tower::make(3, 1, 1);
  const Field& K3 = t3.fk();
  std::set<Code> fourth_powers;
  for (Code x = 1; x < K3.size(); ++x) fourth_powers.insert(K3.pow(x, 4));
  for (Code c = 1; c < K3.size(); ++c) {
    if (fourth_powers.count(c)) {
      CHECK(K3.pow(t3.solve_power(Elem{Level::FK, c}, 4).code, 4) == c);
    } else {
      CHECK_FALSE(t3.is_square(Elem{Level::FK, c}));
      try {
        (void)t3.solve_power(Elem{Level::FK, c}, 4);
        FAIL("expected NoSolution");
      } catch (const Error& e) {
        CHECK(e.code() == Errc::NoSolution);
      }
    }
  }
}

TEST_CASE("solve_frob_quotient") {
  auto t = Tower::make(3, 1, 1);
  const Field& L = t.fk2();
  CHECK(t.solve_frob_quotient(Elem{Level::FK2, 1}).code == 1);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Code> pick(1, L.size() - 1);
  int tried = 0;
  while (tried < 50) {
    const Elem beta{Level::FK2, pick(rng)};
    if (t.norm(beta, Level::Fq).code != 1) continue;
    ++tried;
    const Elem xi = t.solve_frob_quotient(beta);
    CHECK(xi.code != 0);
    CHECK(L.pow(xi.code, t.q() - 1) == beta.code);
  }

  Code bad = 1;
  while (t.norm(Elem{Level::FK2, bad}, Level::Fq).code != t.generator(Level::Fq)) ++bad;
  try {
    (void)t.solve_frob_quotient(Elem{Level::FK2, bad});
    FAIL("expected NormNotOne");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NormNotOne);
  }
}

TEST_CASE("linearized_kernel") {
  auto t = Tower::make(3, 1, 1);
  const Elem zero{Level::FK, 0}, one{Level::FK, 1};
  CHECK(t.linearized_kernel(one, zero, zero, Level::FK).empty());

  // y^q - y: kernel is F_q, one vector over F_q.
  auto fixed = t.linearized_kernel(t.neg(one), one, zero, Level::FK);
  CHECK(fixed.size() == 1);
  for (const auto& y : fixed) CHECK(y.code < t.q());

  auto t4 = Tower::make(2, 2, 1);
  const Elem one4{Level::FK, 1}, zero4{Level::FK, 0};
  auto fixed4 = t4.linearized_kernel(one4, one4, zero4, Level::FK2);
  REQUIRE(fixed4.size() == 1);
  CHECK(fixed4[0].code < t4.q());

  SUBCASE("F_1 of a non-square omega has a nonzero root in F_27") {
    const Field& K = t.fk();
    int checked = 0;
    for (Code w = 2; w < K.size(); ++w) {
      const Code s = K.sub(K.mul(w, w), 1);
      if (s == 0 || t.is_square(Elem{Level::FK, s})) continue;
      const Code chi = K.pow(s, (t.q() - 1) / 2);
      const Code a1 = K.add(K.pow(w, t.q()), K.mul(w, chi));
      const auto basis = t.linearized_kernel(Elem{Level::FK, chi}, Elem{Level::FK, a1}, one, Level::FK);
      std::size_t roots = 0;
      for (Code y = 0; y < K.size(); ++y) {
        const Code v = K.add(K.add(K.mul(chi, y), K.mul(a1, K.pow(y, 3))), K.pow(y, 9));
        roots += v == 0;
      }
      std::size_t expected = 1;
      for (std::size_t i = 0; i < basis.size(); ++i) expected *= 3;
      CHECK(basis.size() >= 1);
      CHECK(roots == expected);
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("norm identities for omega with omega^2 - 1 a non-square") {
  for (auto [p, h, n] : {std::tuple{3u, 1u, 1u}, {5u, 1u, 1u}, {3u, 1u, 2u}}) {
    auto t = Tower::make(p, h, n);
    const Field& K = t.fk();
    int count = 0;
    for (Code w = 0; w < K.size(); ++w) {
      const Elem s{Level::FK, K.sub(K.mul(w, w), 1)};
      if (t.is_square(s)) continue;
      const Elem T = t.sqrt(Elem{Level::FK2, s.code});
      CHECK_FALSE(t.in_level(T, Level::FK));
      CHECK(t.frobenius(T, t.m()) == t.neg(T));
      const Elem W{Level::FK2, w};
      CHECK(t.norm(t.add(W, T), Level::Fq).code == 1);
      CHECK(t.norm(t.sub(W, T), Level::Fq).code == 1);
      ++count;
    }
    CHECK(count > 0);
  }
}

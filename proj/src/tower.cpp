#include "capgeom/tower.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "capgeom/error.hpp"
#include "capgeom/linalg.hpp"

namespace capgeom {

std::string_view level_name(Level l) noexcept {
  switch (l) {
    case Level::Fp: return "Fp";
    case Level::Fq: return "Fq";
    case Level::FK: return "FK";
    case Level::FK2: return "FK2";
  }
  return "?";
}

DiscreteLog::DiscreteLog(const Field& field) : field_(&field) {
  const std::uint32_t n = field.order();
  m_ = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  if (m_ == 0) m_ = 1;
  baby_.reserve(m_);
  Code x = 1;
  const Code g = field.generator();
  for (std::uint32_t j = 0; j < m_; ++j) {
    baby_.emplace(x, j);
    x = field.mul(x, g);
  }
  giant_ = field.inv(field.pow(g, m_));
}

std::uint32_t DiscreteLog::operator()(Code a) const {
  const std::uint32_t n = field_->order();
  Code y = a;
  for (std::uint32_t i = 0; i <= n / m_; ++i) {
    if (auto it = baby_.find(y); it != baby_.end()) {
      return static_cast<std::uint32_t>((static_cast<std::uint64_t>(i) * m_ + it->second) % n);
    }
    y = field_->mul(y, giant_);
  }
  throw Error(Errc::InternalContradiction, "discrete log not found");
}

Tower Tower::make(std::uint32_t p, unsigned h, unsigned n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be at least 1");
  return make_with_degree(p, h, 2 * n + 1, true);
}

Tower Tower::make_with_degree(std::uint32_t p, unsigned h, unsigned m, bool with_quadratic) {
  if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
  if (h < 1 || m < 1) throw Error(Errc::InvalidArgument, "extension degrees must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < h; ++i) q *= p;
  if (q <= 2) throw Error(Errc::QTooSmall, "q = " + std::to_string(q) + " (need q > 2)");

  Tower t;
  t.p_ = p;
  t.h_ = h;
  t.m_ = m;
  t.fp_ = Field::prime(p);
  t.fq_ = h == 1 ? t.fp_ : Field::extension(t.fp_, h);
  t.fk_ = Field::extension(t.fq_, m);
  if (with_quadratic) t.fk2_ = Field::extension(t.fk_, 2);
  t.dlog_q_ = std::make_shared<DiscreteLog>(*t.fq_);
  t.dlog_k_ = std::make_shared<DiscreteLog>(*t.fk_);
  if (t.fk2_) t.dlog_k2_ = std::make_shared<DiscreteLog>(*t.fk2_);
  return t;
}

const Field& Tower::field(Level l) const {
  switch (l) {
    case Level::Fp: return *fp_;
    case Level::Fq: return *fq_;
    case Level::FK: return *fk_;
    case Level::FK2: return fk2();
  }
  throw Error(Errc::LevelMismatch, "unknown level");
}

const Field& Tower::fk2() const {
  if (!fk2_) throw Error(Errc::LevelMismatch, "tower built without the quadratic level");
  return *fk2_;
}

unsigned Tower::degree_over_q(Level l) const {
  switch (l) {
    case Level::Fp:
    case Level::Fq: return 1;
    case Level::FK: return m_;
    case Level::FK2: return 2 * m_;
  }
  return 1;
}

void Tower::check(const Elem& x) const {
  if (!field(x.level).contains(x.code)) {
    throw Error(Errc::InvalidArgument, "code " + std::to_string(x.code) + " outside " +
                                           std::string(level_name(x.level)));
  }
}

Elem Tower::elem(Level l, Code c) const {
  Elem e{l, c};
  check(e);
  return e;
}

bool Tower::in_level(const Elem& x, Level l) const {
  check(x);
  if (l >= x.level) return true;
  const Field& F = field(x.level);
  return F.pow(x.code, field(l).size()) == x.code;
}

Elem Tower::embed(const Elem& x, Level l) const {
  if (!in_level(x, l)) {
    throw Error(Errc::LevelMismatch, "element is not in " + std::string(level_name(l)));
  }
  return Elem{l, x.code};
}

Elem Tower::add(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  const Level l = top(a, b);
  return {l, field(l).add(a.code, b.code)};
}

Elem Tower::sub(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  const Level l = top(a, b);
  return {l, field(l).sub(a.code, b.code)};
}

Elem Tower::neg(const Elem& a) const {
  check(a);
  return {a.level, field(a.level).neg(a.code)};
}

Elem Tower::mul(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  const Level l = top(a, b);
  return {l, field(l).mul(a.code, b.code)};
}

Elem Tower::inv(const Elem& a) const {
  check(a);
  if (a.code == 0) throw Error(Errc::InvalidArgument, "inverse of zero");
  return {a.level, field(a.level).inv(a.code)};
}

Elem Tower::div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

Elem Tower::pow(const Elem& a, std::uint64_t e) const {
  check(a);
  return {a.level, field(a.level).pow(a.code, e)};
}

Code Tower::frob_code(Level l, Code x, unsigned i) const {
  const Field& F = field(l);
  const unsigned d = degree_over_q(l);
  i %= d;
  for (unsigned k = 0; k < i; ++k) x = F.pow(x, q());
  return x;
}

Elem Tower::frobenius(const Elem& x, long long i) const {
  check(x);
  const long long d = degree_over_q(x.level);
  const long long r = ((i % d) + d) % d;
  return {x.level, frob_code(x.level, x.code, static_cast<unsigned>(r))};
}

Elem Tower::norm(const Elem& x, Level target) const {
  check(x);
  if (target > x.level) {
    throw Error(Errc::LevelMismatch, "norm target above the element's level");
  }
  const Field& F = field(x.level);
  const std::uint64_t e = F.order() / field(target).order();
  const Code r = F.pow(x.code, e);
  if (!field(target).contains(r)) throw Error(Errc::InternalContradiction, "norm left the target field");
  return {target, r};
}

Code Tower::norm_to_q(Code x) const { return fk_->pow(x, fk_->order() / fq_->order()); }

bool Tower::is_square(const Elem& x) const {
  check(x);
  if (x.code == 0 || p_ == 2) return true;
  const Field& F = field(x.level);
  return F.pow(x.code, F.order() / 2) == 1;
}

Elem Tower::sqrt(const Elem& x) const {
  check(x);
  const Field& F = field(x.level);
  if (x.code == 0) return x;
  if (p_ == 2) return {x.level, F.pow(x.code, F.size() / 2)};
  if (!is_square(x)) throw Error(Errc::NotASquare, "element has no square root");
  const Code r = F.exp(F.log(x.code) / 2);
  const Code s = F.neg(r);
  return {x.level, r < s ? r : s};
}

std::uint32_t Tower::dlog(const Elem& x) const {
  check(x);
  if (x.code == 0) throw Error(Errc::InvalidArgument, "discrete log of zero");
  switch (x.level) {
    case Level::Fp:
    case Level::Fq: return (*dlog_q_)(x.code);
    case Level::FK: return (*dlog_k_)(x.code);
    case Level::FK2:
      fk2();
      return (*dlog_k2_)(x.code);
  }
  return 0;
}

Elem Tower::solve_power(const Elem& c_in, std::uint64_t e) const {
  check(c_in);
  if (c_in.level == Level::FK2) throw Error(Errc::LevelMismatch, "solve_power works in F_K");
  const Elem c{Level::FK, c_in.code};
  if (c.code == 0) throw Error(Errc::InvalidArgument, "solve_power needs c != 0");
  const std::uint64_t n = fk_->order();
  const std::uint64_t m = dlog(c);
  const std::uint64_t g = std::gcd(e % n, n);
  if (m % g != 0) throw Error(Errc::NoSolution, "c is not an e-th power in F_K");
  const std::uint64_t nn = n / g;
  // k = (m/g) * (e/g)^{-1} mod n/g, the smallest non-negative solution.
  std::uint64_t k = 0;
  if (nn > 1) {
    const auto a = static_cast<long long>((e / g) % nn);
    long long old_r = a, r = static_cast<long long>(nn), old_s = 1, s = 0;
    while (r != 0) {
      const long long quo = old_r / r;
      old_r -= quo * r;
      std::swap(old_r, r);
      old_s -= quo * s;
      std::swap(old_s, s);
    }
    const long long inv = ((old_s % static_cast<long long>(nn)) + static_cast<long long>(nn)) %
                          static_cast<long long>(nn);
    k = (m / g) % nn * static_cast<std::uint64_t>(inv) % nn;
  }
  const Elem t{Level::FK, fk_->exp(k)};
  if (fk_->pow(t.code, e) != c.code) throw Error(Errc::InternalContradiction, "solve_power check failed");
  return t;
}

Elem Tower::solve_frob_quotient(const Elem& beta_in) const {
  check(beta_in);
  const Field& L = fk2();
  const Elem beta{Level::FK2, beta_in.code};
  if (beta.code == 0 || norm(beta, Level::Fq).code != 1) {
    throw Error(Errc::NormNotOne, "norm of beta over F_q is not 1");
  }
  const std::uint64_t m = dlog(beta);
  const std::uint64_t qm1 = q() - 1;
  if (m % qm1 != 0) throw Error(Errc::InternalContradiction, "norm-one element with bad log");
  const Elem xi{Level::FK2, L.exp(m / qm1)};
  if (L.pow(xi.code, qm1) != beta.code) {
    throw Error(Errc::InternalContradiction, "solve_frob_quotient check failed");
  }
  return xi;
}

std::vector<Elem> Tower::linearized_kernel(const Elem& a0, const Elem& a1, const Elem& a2,
                                           Level level) const {
  if (level != Level::FK && level != Level::FK2) {
    throw Error(Errc::LevelMismatch, "linearized kernel is computed on F_K or F_{K^2}");
  }
  for (const Elem* a : {&a0, &a1, &a2}) {
    check(*a);
    if (a->level > level) throw Error(Errc::LevelMismatch, "coefficient above the target level");
  }
  const Field& L = field(level);
  const Field& Q = *fq_;
  const unsigned dim = degree_over_q(level);
  const std::uint32_t qq = q();

  // Column j holds the F_q-digits of f(q^j); the element with code q^j is the
  // j-th vector of the tower's F_q-basis.
  Matrix M(dim, dim);
  Code basis = 1;
  for (unsigned j = 0; j < dim; ++j) {
    const Code y = basis;
    const Code yq = L.pow(y, qq);
    const Code yqq = L.pow(yq, qq);
    Code v = L.add(L.add(L.mul(a0.code, y), L.mul(a1.code, yq)), L.mul(a2.code, yqq));
    for (unsigned i = 0; i < dim; ++i) {
      M(i, j) = v % qq;
      v /= qq;
    }
    basis *= qq;
  }
  std::vector<Elem> out;
  for (const auto& vec : kernel(Q, M)) {
    Code c = 0;
    Code w = 1;
    for (unsigned i = 0; i < dim; ++i) {
      c += vec[i] * w;
      w *= qq;
    }
    out.push_back({level, c});
  }
  return out;
}

}  // namespace capgeom

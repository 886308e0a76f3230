#include "capgeom/field.hpp"

#include <cassert>
#include <functional>
#include <string>
#include <stdexcept>

#include "capgeom/error.hpp"

namespace capgeom {

Code add_base_p(Code a, Code b, std::uint32_t p) noexcept {
  if (p == 2) return a ^ b;
  Code r = 0;
  Code w = 1;
  while (a != 0 || b != 0) {
    Code d = a % p + b % p;
    if (d >= p) d -= p;
    r += d * w;
    a /= p;
    b /= p;
    w *= p;
  }
  return r;
}

Code neg_base_p(Code a, std::uint32_t p) noexcept {
  if (p == 2) return a;
  Code r = 0;
  Code w = 1;
  while (a != 0) {
    Code d = a % p;
    if (d != 0) r += (p - d) * w;
    a /= p;
    w *= p;
  }
  return r;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// Dense polynomials over a field, low degree first. Used only while building
// a new level, before its own tables exist.
using Poly = std::vector<Code>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Field& B, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = B.add(r[i + j], B.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

// Remainder of a modulo f (f need not be monic; its leading coefficient is inverted).
Poly poly_mod(const Field& B, Poly a, const Poly& f) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const Code lead_inv = B.inv(f.back());
  while (a.size() > df) {
    const Code c = B.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = B.sub(a[shift + i], B.mul(c, f[i]));
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Field& B, const Poly& a, const Poly& b, const Poly& f) {
  return poly_mod(B, poly_mul(B, a, b), f);
}

Poly poly_powmod(const Field& B, Poly base, std::uint64_t e, const Poly& f) {
  Poly r{1};
  base = poly_mod(B, std::move(base), f);
  while (e > 0) {
    if (e & 1U) r = poly_mulmod(B, r, base, f);
    e >>= 1U;
    if (e > 0) base = poly_mulmod(B, base, base, f);
  }
  return poly_mod(B, r, f);
}

Poly poly_gcd(const Field& B, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(B, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test: f monic of degree d is irreducible iff x^{|B|^d} = x mod f and
// gcd(x^{|B|^{d/r}} - x, f) = 1 for every prime r | d.
bool is_irreducible(const Field& B, const Poly& f) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 1) return true;
  if (f[0] == 0) return false;
  // frob[j] = x^{|B|^j} mod f
  std::vector<Poly> frob(d + 1);
  frob[0] = poly_mod(B, Poly{0, 1}, f);
  for (unsigned j = 1; j <= d; ++j) frob[j] = poly_powmod(B, frob[j - 1], B.size(), f);
  const Poly x = poly_mod(B, Poly{0, 1}, f);
  if (frob[d] != x) return false;
  for (std::uint64_t r : prime_factors(d)) {
    Poly g = frob[d / r];
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = B.sub(g[1], 1);
    trim(g);
    if (g.empty()) return false;
    if (poly_gcd(B, g, f).size() != 1) return false;
  }
  return true;
}

bool has_full_order(std::uint64_t order, const std::vector<std::uint64_t>& factors,
                    const std::function<bool(std::uint64_t)>& power_is_one) {
  for (std::uint64_t r : factors) {
    if (power_is_one(order / r)) return false;
  }
  return true;
}

}  // namespace

Code Field::pow(Code a, std::uint64_t e) const noexcept {
  Code r = 1;
  Code b = a;
  while (e > 0) {
    if (e & 1U) r = mul(r, b);
    e >>= 1U;
    if (e > 0) b = mul(b, b);
  }
  return r;
}

std::vector<Code> Field::coefficients(Code a) const {
  std::vector<Code> c(degree_, 0);
  const Code bs = base_ ? base_->size() : p_;
  for (unsigned i = 0; i < degree_; ++i) {
    c[i] = a % bs;
    a /= bs;
  }
  return c;
}

Code Field::from_coefficients(const std::vector<Code>& c) const {
  const Code bs = base_ ? base_->size() : p_;
  Code r = 0;
  Code w = 1;
  for (unsigned i = 0; i < degree_ && i < c.size(); ++i) {
    r += c[i] * w;
    w *= bs;
  }
  return r;
}

void Field::build_tables(const std::vector<Code>& powers) {
  const std::uint32_t n = order();
  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  log_.assign(size_, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = powers[i];
    exp_[i + n] = powers[i];
    log_[powers[i]] = i;
  }
}

std::shared_ptr<const Field> Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(Errc::NonPrime, std::to_string(p) + " is not prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->size_ = p;
  f->degree_ = 1;
  f->modulus_ = {0, 1};
  const std::uint64_t n = p - 1;
  const auto factors = prime_factors(n);
  auto powmod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p;
    while (e > 0) {
      if (e & 1U) r = r * b % p;
      b = b * b % p;
      e >>= 1U;
    }
    return r;
  };
  for (Code g = 1; g < p; ++g) {
    if (has_full_order(n, factors, [&](std::uint64_t e) { return powmod(g, e) == 1; })) {
      f->generator_ = g;
      break;
    }
  }
  std::vector<Code> powers(n);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    powers[i] = static_cast<Code>(x);
    x = x * f->generator_ % p;
  }
  f->build_tables(powers);
  return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> base, unsigned degree) {
  if (!base) throw Error(Errc::InvalidArgument, "extension needs a base field");
  if (degree == 0) throw Error(Errc::InvalidArgument, "extension degree must be positive");
  const Field& B = *base;
  std::uint64_t size = 1;
  for (unsigned i = 0; i < degree; ++i) {
    size *= B.size();
    if (size > (1ULL << 31)) throw Error(Errc::TooLarge, "field too large for table arithmetic");
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = B.characteristic();
  f->size_ = static_cast<std::uint32_t>(size);
  f->degree_ = degree;
  f->base_ = base;

  // Candidates in lexicographic order of (c_0, ..., c_{d-1}), c_0 most significant.
  std::uint64_t candidates = size;
  Poly modulus;
  for (std::uint64_t idx = 0; idx < candidates; ++idx) {
    Poly cand(degree + 1, 0);
    std::uint64_t t = idx;
    for (unsigned i = degree; i-- > 0;) {
      cand[i] = static_cast<Code>(t % B.size());
      t /= B.size();
    }
    cand[degree] = 1;
    if (is_irreducible(B, cand)) {
      modulus = std::move(cand);
      break;
    }
  }
  if (modulus.empty()) throw Error(Errc::InternalContradiction, "no irreducible modulus found");
  f->modulus_ = modulus;

  auto to_poly = [&](Code a) {
    Poly c(degree, 0);
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = a % B.size();
      a /= B.size();
    }
    trim(c);
    return c;
  };
  auto from_poly = [&](const Poly& c) {
    Code r = 0;
    Code w = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      r += c[i] * w;
      w *= B.size();
    }
    return r;
  };

  const std::uint64_t n = size - 1;
  const auto factors = prime_factors(n);
  for (Code g = 1; g < size; ++g) {
    const Poly gp = to_poly(g);
    const bool ok = has_full_order(n, factors, [&](std::uint64_t e) {
      return from_poly(poly_powmod(B, gp, e, modulus)) == 1;
    });
    if (ok && from_poly(poly_powmod(B, gp, n, modulus)) == 1) {
      f->generator_ = g;
      break;
    }
  }
  if (f->generator_ == 0) throw Error(Errc::InternalContradiction, "no primitive element found");

  std::vector<Code> powers(n);
  const Poly gp = to_poly(f->generator_);
  Poly x{1};
  for (std::uint64_t i = 0; i < n; ++i) {
    powers[i] = from_poly(x);
    x = poly_mulmod(B, x, gp, modulus);
  }
  if (from_poly(x) != 1) throw Error(Errc::InternalContradiction, "generator order check failed");
  f->build_tables(powers);
  return f;
}

}  // namespace capgeom

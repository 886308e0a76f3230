#pragma once

// Table-driven arithmetic for one finite field of a tower.
//
// Every element is handled through its canonical integer code: an element of
// an extension B[z]/(f) with coefficients (c_0, ..., c_{d-1}) over B has code
// sum_j code(c_j) * |B|^j. Unwinding the recursion, the code is sum_i e_i p^i
// with e_i in [0, p), so addition is digit-wise mod p at every level and the
// embedding of a subfield is the identity on codes.

#include <cstdint>
#include <memory>
#include <vector>

namespace capgeom {

using Code = std::uint32_t;

/// Digit-wise addition of two base-p strings.
Code add_base_p(Code a, Code b, std::uint32_t p) noexcept;
/// Digit-wise negation of a base-p string.
Code neg_base_p(Code a, std::uint32_t p) noexcept;

bool is_prime(std::uint64_t n) noexcept;
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

class Field {
 public:
  /// F_p with exp/log tables built on the smallest primitive root.
  static std::shared_ptr<const Field> prime(std::uint32_t p);

  /// Extension of `base` of the given degree. The modulus is the
  /// lexicographically smallest monic irreducible, comparing (c_0, c_1, ...)
  /// with c_0 most significant; the generator is the primitive element with
  /// the smallest code.
  static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> base, unsigned degree);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t size() const noexcept { return size_; }
  std::uint32_t order() const noexcept { return size_ - 1; }
  unsigned degree() const noexcept { return degree_; }
  /// Null for a prime field.
  const Field* base() const noexcept { return base_.get(); }
  /// Monic modulus over the base, low degree first (length degree()+1).
  /// A prime field reports the degree-one polynomial x.
  const std::vector<Code>& modulus() const noexcept { return modulus_; }
  Code generator() const noexcept { return generator_; }

  bool contains(Code a) const noexcept { return a < size_; }

  Code add(Code a, Code b) const noexcept { return add_base_p(a, b, p_); }
  Code neg(Code a) const noexcept { return neg_base_p(a, p_); }
  Code sub(Code a, Code b) const noexcept { return add_base_p(a, neg_base_p(b, p_), p_); }

  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Precondition: a != 0.
  Code inv(Code a) const noexcept { return exp_[order() - log_[a]]; }
  Code div(Code a, Code b) const noexcept { return mul(a, inv(b)); }
  /// Square-and-multiply; pow(0, 0) == 1.
  Code pow(Code a, std::uint64_t e) const noexcept;

  /// Discrete log to base generator(). Precondition: a != 0.
  std::uint32_t log(Code a) const noexcept { return log_[a]; }
  Code exp(std::uint64_t k) const noexcept { return exp_[k % order()]; }

  /// Coefficients over the base field (low degree first).
  std::vector<Code> coefficients(Code a) const;
  Code from_coefficients(const std::vector<Code>& c) const;

 private:
  Field() = default;
  void build_tables(const std::vector<Code>& powers_of_generator);

  std::uint32_t p_ = 0;
  std::uint32_t size_ = 0;
  unsigned degree_ = 1;
  std::shared_ptr<const Field> base_;
  std::vector<Code> modulus_;
  Code generator_ = 0;
  std::vector<Code> exp_;            // length 2 * order()
  std::vector<std::uint32_t> log_;   // log_[0] unused
};

}  // namespace capgeom

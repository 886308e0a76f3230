#pragma once

// The four-level tower F_p ⊂ F_q ⊂ F_K ⊂ F_{K^2}, K = q^m.
//
// For the cap construction m = 2n+1; the linearized-permutation checks also
// build towers with an arbitrary middle degree. All levels share one code
// space: an element of a subfield has the same code at every level above it.

#include <cstdint>
#include <memory>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "capgeom/field.hpp"

namespace capgeom {

enum class Level : std::uint8_t { Fp = 0, Fq = 1, FK = 2, FK2 = 3 };

std::string_view level_name(Level l) noexcept;

struct Elem {
  Level level = Level::Fq;
  Code code = 0;

  friend bool operator==(const Elem&, const Elem&) = default;
};

/// Baby-step giant-step discrete logarithm in the multiplicative group of one field.
class DiscreteLog {
 public:
  explicit DiscreteLog(const Field& field);

  /// k in [0, |F|-1) with g^k = a. Precondition: a != 0.
  std::uint32_t operator()(Code a) const;

 private:
  const Field* field_;
  std::uint32_t m_ = 1;
  Code giant_ = 1;  // g^{-m}
  std::unordered_map<Code, std::uint32_t> baby_;
};

class Tower {
 public:
  /// Tower for PG(4n+1, q), q = p^h, K = q^{2n+1}.
  static Tower make(std::uint32_t p, unsigned h, unsigned n);
  /// Tower with middle degree m over F_q; the quadratic top level is optional.
  static Tower make_with_degree(std::uint32_t p, unsigned h, unsigned m, bool with_quadratic = true);

  std::uint32_t p() const noexcept { return p_; }
  unsigned h() const noexcept { return h_; }
  /// Middle extension degree over F_q.
  unsigned m() const noexcept { return m_; }
  /// Construction parameter with m = 2n+1 (zero when m is even).
  unsigned n() const noexcept { return m_ % 2 == 1 ? (m_ - 1) / 2 : 0; }
  std::uint32_t q() const noexcept { return fq_->size(); }
  std::uint32_t K() const noexcept { return fk_->size(); }
  bool has_quadratic() const noexcept { return static_cast<bool>(fk2_); }

  const Field& field(Level l) const;
  const Field& fq() const noexcept { return *fq_; }
  const Field& fk() const noexcept { return *fk_; }
  const Field& fk2() const;
  std::uint32_t level_size(Level l) const { return field(l).size(); }
  /// Degree of a level over F_q (0 for F_p when h > 1 is not meaningful; reported as 1).
  unsigned degree_over_q(Level l) const;

  /// f1 (Fq over Fp), f2 (FK over Fq) or f3 (FK2 over FK).
  const std::vector<Code>& modulus(Level l) const { return field(l).modulus(); }
  Code generator(Level l) const { return field(l).generator(); }

  Elem elem(Level l, Code c) const;
  /// Decided by x^{|L|} == x evaluated at x's own level.
  bool in_level(const Elem& x, Level l) const;
  /// Re-tag x at another level; throws LevelMismatch when x is not in that subfield.
  Elem embed(const Elem& x, Level l) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, std::uint64_t e) const;

  /// x^{q^i}; negative i counts backwards.
  Elem frobenius(const Elem& x, long long i) const;
  /// x^{(|L|-1)/(|target|-1)} for target below x's level.
  Elem norm(const Elem& x, Level target) const;
  bool is_square(const Elem& x) const;
  /// The square root with the smaller code (odd q); x^{|L|/2} in characteristic 2.
  Elem sqrt(const Elem& x) const;

  /// t in F_K with t^e = c, smallest discrete log among solutions.
  Elem solve_power(const Elem& c, std::uint64_t e) const;
  /// xi in F_{K^2} with xi^{q-1} = beta; beta must have norm 1 over F_q.
  Elem solve_frob_quotient(const Elem& beta) const;
  /// Discrete log at x's level computed by baby-step giant-step.
  std::uint32_t dlog(const Elem& x) const;

  /// F_q-basis of the kernel of y -> a0 y + a1 y^q + a2 y^{q^2} on the given level.
  std::vector<Elem> linearized_kernel(const Elem& a0, const Elem& a1, const Elem& a2, Level level) const;

  /// Code-level helpers used by the geometry modules.
  Code frob_code(Level l, Code x, unsigned i) const;
  Code norm_to_q(Code x_in_fk) const;

 private:
  Tower() = default;
  static Level top(const Elem& a, const Elem& b) { return a.level > b.level ? a.level : b.level; }
  void check(const Elem& x) const;

  std::uint32_t p_ = 0;
  unsigned h_ = 0;
  unsigned m_ = 0;
  std::shared_ptr<const Field> fp_, fq_, fk_, fk2_;
  std::shared_ptr<const DiscreteLog> dlog_q_, dlog_k_, dlog_k2_;
};

}  // namespace capgeom

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capgeom {

enum class Errc {
  NonPrime,
  QTooSmall,
  LevelMismatch,
  NotASquare,
  NoSolution,
  NormNotOne,
  ZeroVector,
  DuplicatePoint,
  ZeroOmega,
  BadOmega,
  PointInCap,
  InternalContradiction,
  KTooSmall,
  NormConditionFails,
  ZeroAlpha,
  NOnlyOne,
  ZeroPair,
  TooSmall,
  TooLarge,
  InvalidArgument,
  Format,
  Io,
};

std::string_view errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace capgeom

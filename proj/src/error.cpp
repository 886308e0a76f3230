#include "capgeom/error.hpp"

namespace capgeom {

std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::QTooSmall: return "QTooSmall";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::NotASquare: return "NotASquare";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NormNotOne: return "NormNotOne";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::ZeroOmega: return "ZeroOmega";
    case Errc::BadOmega: return "BadOmega";
    case Errc::PointInCap: return "PointInCap";
    case Errc::InternalContradiction: return "InternalContradiction";
    case Errc::KTooSmall: return "KTooSmall";
    case Errc::NormConditionFails: return "NormConditionFails";
    case Errc::ZeroAlpha: return "ZeroAlpha";
    case Errc::NOnlyOne: return "NOnlyOne";
    case Errc::ZeroPair: return "ZeroPair";
    case Errc::TooSmall: return "TooSmall";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Format: return "Format";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace capgeom

#pragma once

#include <stdexcept>
#include <string>

namespace lightlike {

/// Failure categories surfaced by the library. The CLI maps them to exit codes.
enum class ErrorKind {
  ParamError,
  DivByZero,
  ShapeError,
  NotInSpan,
  ImmersionRankDrop,
  RankNotLocallyConstant,
  ScreenInvalid,
  LtrConstructionFailed,
  NotTransversalConfig,
  FrameIncomplete,
  NotLightlike,
  InsufficientScene,
  InternalInconsistency,
  ParseError,
  ValidationError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParamError: return "ParamError";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::ImmersionRankDrop: return "ImmersionRankDrop";
    case ErrorKind::RankNotLocallyConstant: return "RankNotLocallyConstant";
    case ErrorKind::ScreenInvalid: return "ScreenInvalid";
    case ErrorKind::LtrConstructionFailed: return "LtrConstructionFailed";
    case ErrorKind::NotTransversalConfig: return "NotTransversalConfig";
    case ErrorKind::FrameIncomplete: return "FrameIncomplete";
    case ErrorKind::NotLightlike: return "NotLightlike";
    case ErrorKind::InsufficientScene: return "InsufficientScene";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lightlike

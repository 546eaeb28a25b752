#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpiso {

enum class Errc {
  NonMonotoneBreaks,
  DimensionMismatch,
  CoverageError,
  InvalidInterval,
  OverlappingIntervals,
  RangeError,
  NonPositiveSlope,
  IncompatibleSpaces,
  UnknownComponent,
  EmptyProbeSet,
  InvalidT0,
  NotUnitNorm,
  OrbitMismatch,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonMonotoneBreaks: return "NonMonotoneBreaks";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::CoverageError: return "CoverageError";
    case Errc::InvalidInterval: return "InvalidInterval";
    case Errc::OverlappingIntervals: return "OverlappingIntervals";
    case Errc::RangeError: return "RangeError";
    case Errc::NonPositiveSlope: return "NonPositiveSlope";
    case Errc::IncompatibleSpaces: return "IncompatibleSpaces";
    case Errc::UnknownComponent: return "UnknownComponent";
    case Errc::EmptyProbeSet: return "EmptyProbeSet";
    case Errc::InvalidT0: return "InvalidT0";
    case Errc::NotUnitNorm: return "NotUnitNorm";
    case Errc::OrbitMismatch: return "OrbitMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lpiso

#pragma once

#include <stdexcept>
#include <string>

namespace normcalc {

enum class Errc {
  NonAssociative,
  NoIdentity,
  NoInverse,
  GeneratorsDoNotGenerate,
  GroupTooLarge,
  NotASubgroup,
  NotRealizable,
  NotSubconjugate,
  NotEquivariant,
  ShapeMismatch,
  TooLarge,
  BoundTooSmall,
  QueryExceedsBound,
  NotAFamily,
  GroupMismatch,
  BoundMismatch,
  NotSubgroup,
  InadmissibleIndex,
  NoWitnessRequired,
  NotComposable,
  InvalidSystem,
  BadInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonAssociative: return "NonAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::GeneratorsDoNotGenerate: return "GeneratorsDoNotGenerate";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::NotRealizable: return "NotRealizable";
    case Errc::NotSubconjugate: return "NotSubconjugate";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BoundTooSmall: return "BoundTooSmall";
    case Errc::QueryExceedsBound: return "QueryExceedsBound";
    case Errc::NotAFamily: return "NotAFamily";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::BoundMismatch: return "BoundMismatch";
    case Errc::NotSubgroup: return "NotSubgroup";
    case Errc::InadmissibleIndex: return "InadmissibleIndex";
    case Errc::NoWitnessRequired: return "NoWitnessRequired";
    case Errc::NotComposable: return "NotComposable";
    case Errc::InvalidSystem: return "InvalidSystem";
    case Errc::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace normcalc

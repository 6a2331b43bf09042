#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fpg {

enum class ErrorKind {
  // fingroup
  MalformedTable,
  NoIdentity,
  NotInvertible,
  NotAssociative,
  NotHomomorphism,
  NotSurjective,
  NoPreimage,
  // freeprod / input
  MalformedWord,
  InvalidInput,
  // covgraph
  IndexBoundExceeded,
  // kurosh
  DisconnectedUnion,
  // higgins / conjecture
  TreeBoundExceeded,
  ThetaNotSurjectiveOntoB,
  CrossFactorPieceNontrivial,
  BetaImageNotInFactor,
  NotFreeProduct,
  // verify
  GraphNotComplete,
  MalformedCertificate,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fpg

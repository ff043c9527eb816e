#pragma once

#include <stdexcept>
#include <string>

namespace zorich {

/// Coarse classification used by callers (the CLI maps it to exit codes).
enum class ErrorKind {
  Domain,   ///< input outside an operation's domain or parameter regime
  Numeric,  ///< overflow, nonsmooth evaluation, ambiguity or a broken certificate
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Parameter bundle outside the certified small-lambda regime.
struct RegimeError : Error {
  explicit RegimeError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Exact target coincides with a Farey endpoint.
struct RationalCollision : Error {
  explicit RationalCollision(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

/// Result not representable in double precision.
struct RangeError : Error {
  explicit RangeError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct NonsmoothPoint : Error {
  explicit NonsmoothPoint(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct BoundaryAmbiguity : Error {
  explicit BoundaryAmbiguity(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

/// An iterate provably left the region that can contain Julia points.
struct LeftJuliaShadow : Error {
  explicit LeftJuliaShadow(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct BoxChainBroken : Error {
  explicit BoxChainBroken(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct NoHair : Error {
  explicit NoHair(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace zorich

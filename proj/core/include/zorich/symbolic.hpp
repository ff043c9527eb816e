#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zorich/family.hpp"
#include "zorich/geometry.hpp"

namespace zorich {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p" or a finite decimal such as "-0.4142". Throws DomainError.
Rational parse_rational(const std::string& text);
/// "p/q" in lowest terms ("p" when q = 1 is still written as "p/1").
std::string to_string(const Rational& r);

/// Greatest integer <= r.
BigInt floor(const Rational& r);

/// Open interval (lo, hi) with rational endpoints.
struct FareyInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& t) const { return lo < t && t < hi; }
  /// Strict inclusion of closures, sharing at most one endpoint.
  bool nested_in(const FareyInterval& outer) const {
    return outer.lo <= lo && hi <= outer.hi && width() < outer.width();
  }
  friend bool operator==(const FareyInterval&, const FareyInterval&) = default;
};

/// Symbol sequence. As a Farey code the symbols are unrestricted; dynamical
/// use requires every cell to be even.
struct Address {
  std::vector<Cell> symbols;

  std::size_t size() const { return symbols.size(); }
  const Cell& operator[](std::size_t k) const { return symbols[k]; }
  bool all_even() const;
  friend bool operator==(const Address&, const Address&) = default;
};

/// `length` symbols repeating `period`.
Address periodic_address(const std::vector<Cell>& period, std::size_t length);

/// Base interval (n, n + 1).
FareyInterval farey_base(std::int64_t n);

/// Child j of I = (a/b, c/d) in the mediant subdivision: the interval between
/// consecutive points p_j, p_{j+1} of the sequence with p_0 = (a+c)/(b+d),
/// p_n = (p_{n-1} + c), p_{-n} = (p_{-n+1} + a) (numerators and denominators
/// added separately).
FareyInterval farey_child(const FareyInterval& interval, std::int64_t j);

/// n_0, ..., n_depth with target in every I_{n_0...n_k}. Throws
/// RationalCollision when the target is an endpoint at some level and
/// RangeError when a symbol does not fit in 64 bits.
std::vector<std::int64_t> farey_encode(const Rational& target, int depth);

/// I_{n_0...n_k}. Throws DomainError on an empty sequence.
FareyInterval farey_decode(const std::vector<std::int64_t>& code);

/// Componentwise encode; symbol k is (code(a1)[k], code(a2)[k]).
Address pair_encode(const Rational& a1, const Rational& a2, int depth);
std::pair<FareyInterval, FareyInterval> pair_decode(const Address& address);

/// Bijection of Z^2 onto the even sublattice, (a, b) -> (a + b, a - b), used
/// to turn a pair code into a dynamical address.
Cell to_even_lattice(const Cell& code);
/// Inverse of to_even_lattice. Throws DomainError for odd cells.
Cell from_even_lattice(const Cell& cell);

/// Cells of fold(Z^k(x)) for k = 0..depth. Throws BoundaryAmbiguity when an
/// iterate is within 1e-9 of a cell wall, LeftJuliaShadow when an iterate is in
/// an odd cell or below the expansion height, RangeError on overflow.
Address itinerary(const Point3& x, int depth, const Params& params);

/// Distance from (x1, x2) to the walls of its cell.
double wall_clearance(const Point3& x);

}  // namespace zorich

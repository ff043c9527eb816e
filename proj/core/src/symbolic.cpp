#include "zorich/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "zorich/error.hpp"

namespace zorich {

namespace {

std::int64_t to_int64(const BigInt& v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw RangeError(std::string(what) + ": symbol exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

BigInt ceil(const Rational& r) { return -floor(-r); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  auto parse_int = [&text](const std::string& digits) {
    if (digits.empty() || digits == "-" || digits == "+") {
      throw DomainError("parse_rational: malformed number '" + text + "'");
    }
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    for (std::size_t i = start; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
        throw DomainError("parse_rational: malformed number '" + text + "'");
      }
    }
    return BigInt(digits[0] == '+' ? digits.substr(1) : digits);
  };

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt p = parse_int(s.substr(0, slash));
    const BigInt q = parse_int(s.substr(slash + 1));
    if (q == 0) throw DomainError("parse_rational: zero denominator in '" + text + "'");
    return Rational(p, q);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    const BigInt w = parse_int(whole);
    if (frac.empty()) return Rational(w);
    const BigInt f = parse_int(frac);
    const BigInt scale = pow(BigInt(10), static_cast<unsigned>(frac.size()));
    const Rational magnitude = Rational(abs(w)) + Rational(f, scale);
    return negative ? -magnitude : magnitude;
  }
  return Rational(parse_int(s));
}

std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt floor(const Rational& r) {
  const BigInt& p = numerator(r);
  const BigInt& q = denominator(r);  // always positive
  BigInt quotient = p / q;           // truncates toward zero
  if (p < 0 && quotient * q != p) quotient -= 1;
  return quotient;
}

bool Address::all_even() const {
  return std::all_of(symbols.begin(), symbols.end(), [](const Cell& c) { return c.even(); });
}

Address periodic_address(const std::vector<Cell>& period, std::size_t length) {
  if (period.empty()) throw DomainError("periodic_address: empty period");
  Address out;
  out.symbols.reserve(length);
  for (std::size_t k = 0; k < length; ++k) out.symbols.push_back(period[k % period.size()]);
  return out;
}

FareyInterval farey_base(std::int64_t n) { return {Rational(n), Rational(n) + 1}; }

FareyInterval farey_child(const FareyInterval& interval, std::int64_t j) {
  const BigInt& a = numerator(interval.lo);
  const BigInt& b = denominator(interval.lo);
  const BigInt& c = numerator(interval.hi);
  const BigInt& d = denominator(interval.hi);
  auto point = [&](std::int64_t k) {
    if (k >= 0) {
      const BigInt m = BigInt(k) + 1;
      return Rational(a + m * c, b + m * d);
    }
    const BigInt m = BigInt(-k) + 1;
    return Rational(m * a + c, m * b + d);
  };
  return {point(j), point(j + 1)};
}

std::vector<std::int64_t> farey_encode(const Rational& target, int depth) {
  if (depth < 0) throw DomainError("farey_encode: depth must be >= 0");
  if (is_integer(target)) {
    throw RationalCollision("farey_encode: target " + to_string(target) + " is an endpoint of the base intervals");
  }
  std::vector<std::int64_t> code;
  code.reserve(static_cast<std::size_t>(depth) + 1);
  code.push_back(to_int64(floor(target), "farey_encode"));
  FareyInterval current = farey_base(code.back());

  for (int level = 1; level <= depth; ++level) {
    const Rational& a_over_b = current.lo;
    const BigInt b = denominator(current.lo);
    const BigInt d = denominator(current.hi);
    const Rational below = target * b - numerator(a_over_b);  // t b - a > 0
    const Rational above = numerator(current.hi) - target * d;  // c - t d > 0
    const Rational mediant(numerator(current.lo) + numerator(current.hi), b + d);
    std::int64_t j = 0;
    if (target == mediant) {
      throw RationalCollision("farey_encode: target " + to_string(target) + " is an endpoint at depth " +
                              std::to_string(level));
    }
    if (target > mediant) {
      const Rational q = below / above;
      if (is_integer(q)) {
        throw RationalCollision("farey_encode: target " + to_string(target) + " is an endpoint at depth " +
                                std::to_string(level));
      }
      j = to_int64(floor(q), "farey_encode") - 1;
    } else {
      const Rational q = above / below;
      if (is_integer(q)) {
        throw RationalCollision("farey_encode: target " + to_string(target) + " is an endpoint at depth " +
                                std::to_string(level));
      }
      j = 1 - to_int64(ceil(q), "farey_encode");
    }
    FareyInterval child = farey_child(current, j);
    if (!child.contains(target)) {
      throw InternalError("farey_encode: containment check failed at depth " + std::to_string(level));
    }
    code.push_back(j);
    current = std::move(child);
  }
  return code;
}

FareyInterval farey_decode(const std::vector<std::int64_t>& code) {
  if (code.empty()) throw DomainError("farey_decode: empty sequence");
  FareyInterval current = farey_base(code.front());
  for (std::size_t k = 1; k < code.size(); ++k) current = farey_child(current, code[k]);
  return current;
}

Address pair_encode(const Rational& a1, const Rational& a2, int depth) {
  const auto c1 = farey_encode(a1, depth);
  const auto c2 = farey_encode(a2, depth);
  Address out;
  out.symbols.reserve(c1.size());
  for (std::size_t k = 0; k < c1.size(); ++k) out.symbols.push_back({c1[k], c2[k]});
  return out;
}

std::pair<FareyInterval, FareyInterval> pair_decode(const Address& address) {
  std::vector<std::int64_t> c1;
  std::vector<std::int64_t> c2;
  for (const Cell& s : address.symbols) {
    c1.push_back(s.r1);
    c2.push_back(s.r2);
  }
  return {farey_decode(c1), farey_decode(c2)};
}

Cell to_even_lattice(const Cell& code) { return {code.r1 + code.r2, code.r1 - code.r2}; }

Cell from_even_lattice(const Cell& cell) {
  if (!cell.even()) throw DomainError("from_even_lattice: odd cell");
  return {(cell.r1 + cell.r2) / 2, (cell.r1 - cell.r2) / 2};
}

double wall_clearance(const Point3& x) {
  const Cell c = fold(x.x1, x.x2).cell;
  const double d1 = 1.0 - std::abs(x.x1 - 2.0 * static_cast<double>(c.r1));
  const double d2 = 1.0 - std::abs(x.x2 - 2.0 * static_cast<double>(c.r2));
  return std::min(d1, d2);
}

Address itinerary(const Point3& x, int depth, const Params& params) {
  if (depth < 0) throw DomainError("itinerary: depth must be >= 0");
  Address out;
  out.symbols.reserve(static_cast<std::size_t>(depth) + 1);
  Point3 cur = x;
  for (int k = 0; k <= depth; ++k) {
    if (!(std::abs(cur.x1) <= 0x1p52 && std::abs(cur.x2) <= 0x1p52)) {
      throw RangeError("itinerary: iterate " + std::to_string(k) + " has planar coordinates beyond 2^52");
    }
    if (wall_clearance(cur) < 1e-9) {
      throw BoundaryAmbiguity("itinerary: iterate " + std::to_string(k) + " lies within 1e-9 of a cell wall");
    }
    const Cell cell = fold(cur.x1, cur.x2).cell;
    if (!cell.even()) {
      throw LeftJuliaShadow("itinerary: iterate " + std::to_string(k) + " entered an odd cell");
    }
    if (cur.x3 < params.expansion_height) {
      throw LeftJuliaShadow("itinerary: iterate " + std::to_string(k) + " fell below the expansion height");
    }
    out.symbols.push_back(cell);
    if (k < depth) cur = zorich_map(cur, params);
  }
  return out;
}

}  // namespace zorich

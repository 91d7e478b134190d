#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace hyperblock {

/// Exact rational with a positive denominator, always in lowest terms.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational &, const Rational &) = default;
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

  /// Largest integer <= this.
  std::int64_t floor() const noexcept;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  std::string str() const;

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct Point {
  Rational x, y;

  friend bool operator==(const Point &, const Point &) = default;
  friend auto operator<=>(const Point &, const Point &) = default;
};

inline Point operator+(const Point &a, const Point &b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point &a, const Point &b) { return {a.x - b.x, a.y - b.y}; }

} // namespace hyperblock

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperblock {

/// Largest field order accepted anywhere in the library.
inline constexpr int kMaxOrder = 1 << 15;

struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend constexpr bool operator==(GaussianInt, GaussianInt) = default;
};

GaussianInt operator+(GaussianInt a, GaussianInt b);
GaussianInt operator-(GaussianInt a, GaussianInt b);
GaussianInt operator-(GaussianInt a);
GaussianInt operator*(GaussianInt a, GaussianInt b);

GaussianInt conj(GaussianInt z);
std::int64_t norm(GaussianInt z);
bool is_zero(GaussianInt z);

struct GaussianDivMod {
  GaussianInt quot;
  GaussianInt rem;
};

/// Euclidean division with the quotient rounded to the nearest Gaussian
/// integer, so norm(rem) <= norm(den) / 2. Throws BothZero on den == 0.
GaussianDivMod divmod(GaussianInt num, GaussianInt den);

/// num / den where den must divide num exactly (checked).
GaussianInt exact_div(GaussianInt num, GaussianInt den);
bool divides(GaussianInt d, GaussianInt z);

/// Unit multiple of z with re > 0 and im >= 0 (0 maps to 0).
GaussianInt normalize_associate(GaussianInt z);

/// Euclidean gcd, normalized via normalize_associate. Throws BothZero.
GaussianInt gauss_gcd(GaussianInt z, GaussianInt w);

std::string to_string(GaussianInt z);

bool is_prime(std::int64_t n);

enum class FieldMode {
  Split,  ///< q = p, p = 1 mod 4; i maps to a square root of -1 mod p
  Inert,  ///< q = p^2, p = 3 mod 4; elements x + y i over F_p
  Prime,  ///< plain F_p for any odd prime; no image of i
};

/// Element of F_q. In split and prime mode y is always 0. Ordering is
/// lexicographic on (x, y) and is the canonical order used everywhere.
struct FieldElement {
  std::uint16_t x = 0;
  std::uint16_t y = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// Canonical generator of the prime ideal with residue field of order q:
/// a + b i with a > b > 0 and a^2 + b^2 = q in split mode, p + 0i in inert
/// mode. Throws InadmissibleOrder.
GaussianInt find_prime_element(int q);

/// The residue field Z[i]/I (or F_p in prime mode). Immutable value type.
class ResidueField {
public:
  /// Z[i]/I for admissible q. Throws InadmissibleOrder.
  static ResidueField gaussian(int q);
  /// F_p for an odd prime p, used for the 2D surface construction.
  static ResidueField prime(int p);

  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  FieldMode mode() const noexcept { return mode_; }
  bool has_i() const noexcept { return mode_ != FieldMode::Prime; }
  /// Generator of I; (p, 0) in prime mode.
  GaussianInt generator() const noexcept { return pi_; }
  /// Image of i. Throws ModeMismatch in prime mode.
  FieldElement sqrt_minus_one() const;

  FieldElement zero() const noexcept { return {}; }
  FieldElement one() const noexcept { return {1, 0}; }
  FieldElement from_int(std::int64_t n) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Throws ZeroVector for a == 0.
  FieldElement inv(FieldElement a) const;
  static bool is_zero(FieldElement a) noexcept { return a.x == 0 && a.y == 0; }

  /// Ring homomorphism Z[i] -> F_q. In prime mode only rational integers
  /// reduce; a nonzero imaginary part throws ModeMismatch.
  FieldElement reduce(GaussianInt z) const;

  /// Dense index in [0, q): x + p * y. Also the export encoding.
  int index(FieldElement a) const noexcept { return a.x + p_ * a.y; }
  FieldElement element(int index) const;

  /// Canonical Gaussian lift: x (split/prime) or x + y i (inert).
  GaussianInt lift(FieldElement a) const noexcept { return GaussianInt{a.x, a.y}; }

  /// All q elements in canonical ascending order.
  std::vector<FieldElement> elements() const;

  bool operator==(const ResidueField &other) const noexcept {
    return q_ == other.q_ && mode_ == other.mode_;
  }

private:
  ResidueField(int q, int p, FieldMode mode, GaussianInt pi, FieldElement s);

  std::int64_t mod(std::int64_t n) const noexcept {
    n %= p_;
    return n < 0 ? n + p_ : n;
  }

  int q_;
  int p_;
  FieldMode mode_;
  GaussianInt pi_;
  FieldElement s_;
};

/// Same as ResidueField::gaussian.
ResidueField make_field(int q);

} // namespace hyperblock

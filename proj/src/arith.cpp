#include "hyperblock/arith.hpp"

#include "hyperblock/error.hpp"

#include <algorithm>
#include <cmath>

namespace hyperblock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InadmissibleOrder: return "InadmissibleOrder";
  case ErrorCode::BothZero: return "BothZero";
  case ErrorCode::Overflow: return "Overflow";
  case ErrorCode::CapExceeded: return "CapExceeded";
  case ErrorCode::ModeMismatch: return "ModeMismatch";
  case ErrorCode::ZeroVector: return "ZeroVector";
  case ErrorCode::NotApplicable: return "NotApplicable";
  case ErrorCode::WrongOrder: return "WrongOrder";
  case ErrorCode::BadSizes: return "BadSizes";
  case ErrorCode::InvalidMatrix: return "InvalidMatrix";
  case ErrorCode::IOError: return "IOError";
  case ErrorCode::ClosureSizeMismatch: return "ClosureSizeMismatch";
  case ErrorCode::DegenerateBlock: return "DegenerateBlock";
  case ErrorCode::CountMismatch: return "CountMismatch";
  case ErrorCode::SchemeViolation: return "SchemeViolation";
  case ErrorCode::NotAPBIBD: return "NotAPBIBD";
  case ErrorCode::NotConnected: return "NotConnected";
  case ErrorCode::NotClosedSurface: return "NotClosedSurface";
  case ErrorCode::LinkNotTorus: return "LinkNotTorus";
  case ErrorCode::NotASphere: return "NotASphere";
  case ErrorCode::NotACircle: return "NotACircle";
  }
  return "Unknown";
}

bool is_verification_failure(ErrorCode code) {
  switch (code) {
  case ErrorCode::ClosureSizeMismatch:
  case ErrorCode::DegenerateBlock:
  case ErrorCode::CountMismatch:
  case ErrorCode::SchemeViolation:
  case ErrorCode::NotAPBIBD:
  case ErrorCode::NotConnected:
  case ErrorCode::NotClosedSurface:
  case ErrorCode::LinkNotTorus:
  case ErrorCode::NotASphere:
  case ErrorCode::NotACircle:
    return true;
  default:
    return false;
  }
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "integer addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "integer subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "integer multiplication");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

// Nearest integer to a / b for b > 0, ties rounded up.
std::int64_t round_div(std::int64_t a, std::int64_t b) {
  return floor_div(checked_add(checked_mul(2, a), b), checked_mul(2, b));
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t result = 1 % m;
  base %= m;
  if (base < 0)
    base += m;
  while (exp > 0) {
    if (exp & 1)
      result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

} // namespace

GaussianInt operator+(GaussianInt a, GaussianInt b) {
  return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
}

GaussianInt operator-(GaussianInt a, GaussianInt b) {
  return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)};
}

GaussianInt operator-(GaussianInt a) { return GaussianInt{} - a; }

GaussianInt operator*(GaussianInt a, GaussianInt b) {
  return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
          checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
}

GaussianInt conj(GaussianInt z) { return {z.re, checked_sub(0, z.im)}; }

std::int64_t norm(GaussianInt z) {
  return checked_add(checked_mul(z.re, z.re), checked_mul(z.im, z.im));
}

bool is_zero(GaussianInt z) { return z.re == 0 && z.im == 0; }

GaussianDivMod divmod(GaussianInt num, GaussianInt den) {
  if (is_zero(den))
    throw Error(ErrorCode::BothZero, "division by zero Gaussian integer");
  const std::int64_t n = norm(den);
  const GaussianInt t = num * conj(den);
  const GaussianInt quot{round_div(t.re, n), round_div(t.im, n)};
  return {quot, num - quot * den};
}

bool divides(GaussianInt d, GaussianInt z) {
  if (is_zero(d))
    return is_zero(z);
  return is_zero(divmod(z, d).rem);
}

GaussianInt exact_div(GaussianInt num, GaussianInt den) {
  const auto [quot, rem] = divmod(num, den);
  if (!is_zero(rem))
    throw Error(ErrorCode::InvalidMatrix, to_string(den) + " does not divide " + to_string(num));
  return quot;
}

GaussianInt normalize_associate(GaussianInt z) {
  if (is_zero(z))
    return z;
  for (int k = 0; k < 4; ++k) {
    if (z.re > 0 && z.im >= 0)
      return z;
    z = GaussianInt{checked_sub(0, z.im), z.re}; // multiply by i
  }
  return z; // unreachable: exactly one associate lies in the quadrant
}

GaussianInt gauss_gcd(GaussianInt z, GaussianInt w) {
  if (is_zero(z) && is_zero(w))
    throw Error(ErrorCode::BothZero, "gcd(0, 0)");
  while (!is_zero(w)) {
    GaussianInt r = divmod(z, w).rem;
    z = w;
    w = r;
  }
  return normalize_associate(z);
}

std::string to_string(GaussianInt z) {
  std::string out = std::to_string(z.re);
  out += z.im < 0 ? "-" : "+";
  out += std::to_string(z.im < 0 ? -z.im : z.im);
  out += "i";
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace {

struct OrderShape {
  int p;
  FieldMode mode;
};

OrderShape classify_order(int q) {
  if (q < 3 || q > kMaxOrder)
    throw Error(ErrorCode::InadmissibleOrder, "q = " + std::to_string(q) + " out of range");
  if (q % 2 == 0)
    throw Error(ErrorCode::InadmissibleOrder,
                "q = " + std::to_string(q) + " has characteristic 2");
  if (is_prime(q)) {
    if (q % 4 != 1)
      throw Error(ErrorCode::InadmissibleOrder,
                  "prime q = " + std::to_string(q) + " is not 1 mod 4");
    return {q, FieldMode::Split};
  }
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
  if (r * r == q && is_prime(r)) {
    if (r % 4 != 3)
      throw Error(ErrorCode::InadmissibleOrder,
                  "q = " + std::to_string(q) + " is the square of a prime that is not 3 mod 4");
    return {r, FieldMode::Inert};
  }
  throw Error(ErrorCode::InadmissibleOrder,
              "q = " + std::to_string(q) + " is neither a prime nor a prime square");
}

} // namespace

GaussianInt find_prime_element(int q) {
  const OrderShape shape = classify_order(q);
  if (shape.mode == FieldMode::Inert)
    return {shape.p, 0};
  for (std::int64_t a = 1; a * a < q; ++a) {
    const std::int64_t b2 = q - a * a;
    const auto b = static_cast<std::int64_t>(std::lround(std::sqrt(static_cast<double>(b2))));
    if (b * b == b2 && a > b && b > 0)
      return {a, b};
  }
  throw Error(ErrorCode::InadmissibleOrder, "no two-square decomposition of " + std::to_string(q));
}

ResidueField::ResidueField(int q, int p, FieldMode mode, GaussianInt pi, FieldElement s)
    : q_(q), p_(p), mode_(mode), pi_(pi), s_(s) {}

ResidueField ResidueField::gaussian(int q) {
  const OrderShape shape = classify_order(q);
  const GaussianInt pi = find_prime_element(q);
  if (shape.mode == FieldMode::Inert)
    return ResidueField(q, shape.p, FieldMode::Inert, pi, FieldElement{0, 1});

  const std::int64_t p = shape.p;
  const std::int64_t b_inv = pow_mod(pi.im, p - 2, p);
  std::int64_t s = (p - pi.re % p) % p * b_inv % p;
  if (s * s % p != p - 1)
    throw Error(ErrorCode::InadmissibleOrder, "square root of -1 check failed");
  return ResidueField(q, shape.p, FieldMode::Split, pi,
                      FieldElement{static_cast<std::uint16_t>(s), 0});
}

ResidueField ResidueField::prime(int p) {
  if (p < 3 || p > kMaxOrder || !is_prime(p))
    throw Error(ErrorCode::InadmissibleOrder, std::to_string(p) + " is not an odd prime");
  return ResidueField(p, p, FieldMode::Prime, GaussianInt{p, 0}, FieldElement{});
}

ResidueField make_field(int q) { return ResidueField::gaussian(q); }

FieldElement ResidueField::sqrt_minus_one() const {
  if (mode_ == FieldMode::Prime)
    throw Error(ErrorCode::ModeMismatch, "prime field has no designated image of i");
  return s_;
}

FieldElement ResidueField::from_int(std::int64_t n) const {
  return FieldElement{static_cast<std::uint16_t>(mod(n)), 0};
}

FieldElement ResidueField::add(FieldElement a, FieldElement b) const {
  return {static_cast<std::uint16_t>((a.x + b.x) % p_), static_cast<std::uint16_t>((a.y + b.y) % p_)};
}

FieldElement ResidueField::sub(FieldElement a, FieldElement b) const {
  return {static_cast<std::uint16_t>((a.x + p_ - b.x) % p_),
          static_cast<std::uint16_t>((a.y + p_ - b.y) % p_)};
}

FieldElement ResidueField::neg(FieldElement a) const { return sub(zero(), a); }

FieldElement ResidueField::mul(FieldElement a, FieldElement b) const {
  if (mode_ != FieldMode::Inert)
    return {static_cast<std::uint16_t>(std::int64_t{a.x} * b.x % p_), 0};
  const std::int64_t re = mod(std::int64_t{a.x} * b.x - std::int64_t{a.y} * b.y);
  const std::int64_t im = mod(std::int64_t{a.x} * b.y + std::int64_t{a.y} * b.x);
  return {static_cast<std::uint16_t>(re), static_cast<std::uint16_t>(im)};
}

FieldElement ResidueField::inv(FieldElement a) const {
  if (is_zero(a))
    throw Error(ErrorCode::ZeroVector, "inverse of zero");
  if (mode_ != FieldMode::Inert)
    return {static_cast<std::uint16_t>(pow_mod(a.x, p_ - 2, p_)), 0};
  // (x + y i)^-1 = (x - y i) / (x^2 + y^2); the norm is nonzero since p = 3 mod 4
  const std::int64_t n = mod(std::int64_t{a.x} * a.x + std::int64_t{a.y} * a.y);
  const std::int64_t n_inv = pow_mod(n, p_ - 2, p_);
  return {static_cast<std::uint16_t>(a.x * n_inv % p_),
          static_cast<std::uint16_t>(mod(-std::int64_t{a.y}) * n_inv % p_)};
}

FieldElement ResidueField::reduce(GaussianInt z) const {
  switch (mode_) {
  case FieldMode::Split: {
    const std::int64_t x = mod(z.re);
    const std::int64_t y = mod(z.im);
    return {static_cast<std::uint16_t>((x + y * s_.x) % p_), 0};
  }
  case FieldMode::Inert:
    return {static_cast<std::uint16_t>(mod(z.re)), static_cast<std::uint16_t>(mod(z.im))};
  case FieldMode::Prime:
    if (z.im != 0)
      throw Error(ErrorCode::ModeMismatch, "cannot reduce " + to_string(z) + " into a prime field");
    return from_int(z.re);
  }
  return {};
}

FieldElement ResidueField::element(int index) const {
  return {static_cast<std::uint16_t>(index % p_), static_cast<std::uint16_t>(index / p_)};
}

std::vector<FieldElement> ResidueField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(q_));
  for (int i = 0; i < q_; ++i)
    out.push_back(element(i));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace hyperblock

#include "hyperblock/arith.hpp"
#include "hyperblock/error.hpp"

#include <doctest.h>

#include <random>

using namespace hyperblock;

namespace {

GaussianInt random_gauss(std::mt19937_64 &rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return {d(rng), d(rng)};
}

ErrorCode code_of(auto &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IOError;
}

} // namespace

TEST_CASE("prime elements agree with a brute-force two-squares search") {
  for (int q = 3; q < 400; ++q) {
    if (!is_prime(q) || q % 4 != 1)
      continue;
    std::vector<GaussianInt> found;
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < a; ++b)
        if (a * a + b * b == q)
          found.push_back({a, b});
    REQUIRE(found.size() == 1);
    CHECK(find_prime_element(q) == found.front());
  }
  CHECK(find_prime_element(5) == GaussianInt{2, 1});
  CHECK(find_prime_element(13) == GaussianInt{3, 2});
  CHECK(find_prime_element(9) == GaussianInt{3, 0});
  CHECK(find_prime_element(49) == GaussianInt{7, 0});
}

TEST_CASE("inadmissible orders") {
  for (int q : {0, 1, 2, 3, 4, 7, 8, 11, 15, 25, 27, 100})
    CHECK(code_of([&] { make_field(q); }) == ErrorCode::InadmissibleOrder);
  CHECK(code_of([] { ResidueField::prime(9); }) == ErrorCode::InadmissibleOrder);
  CHECK(code_of([] { ResidueField::prime(2); }) == ErrorCode::InadmissibleOrder);
}

TEST_CASE("field construction examples") {
  const ResidueField f13 = make_field(13);
  CHECK(f13.mode() == FieldMode::Split);
  CHECK(f13.sqrt_minus_one() == FieldElement{5, 0});
  CHECK(f13.reduce({0, 1}) == FieldElement{5, 0});
  CHECK(f13.reduce({3, 2}) == f13.zero());

  const ResidueField f9 = make_field(9);
  CHECK(f9.mode() == FieldMode::Inert);
  CHECK(f9.characteristic() == 3);
  CHECK(f9.sqrt_minus_one() == FieldElement{0, 1});
  CHECK(f9.reduce({1, 1}) == FieldElement{1, 1});
  CHECK(f9.reduce({3, 0}) == f9.zero());

  const ResidueField f7 = ResidueField::prime(7);
  CHECK_FALSE(f7.has_i());
  CHECK(code_of([&] { f7.sqrt_minus_one(); }) == ErrorCode::ModeMismatch);
  CHECK(code_of([&] { f7.reduce({1, 1}); }) == ErrorCode::ModeMismatch);
  CHECK(f7.reduce({-1, 0}) == FieldElement{6, 0});
}

TEST_CASE("s squares to -1 and the generator reduces to zero") {
  for (int q : {5, 9, 13, 17, 29, 37, 41, 49, 121}) {
    const ResidueField f = make_field(q);
    const FieldElement s = f.sqrt_minus_one();
    CHECK(f.mul(s, s) == f.neg(f.one()));
    CHECK(f.reduce(f.generator()) == f.zero());
    CHECK(norm(f.generator()) == q);
  }
}

TEST_CASE("inverses exhaustively for q <= 49") {
  for (int q : {5, 9, 13, 17, 29, 37, 41, 49}) {
    const ResidueField f = make_field(q);
    const auto elems = f.elements();
    REQUIRE(elems.size() == static_cast<std::size_t>(q));
    CHECK(std::is_sorted(elems.begin(), elems.end()));
    for (const FieldElement e : elems) {
      CHECK(f.element(f.index(e)) == e);
      if (!ResidueField::is_zero(e))
        CHECK(f.mul(e, f.inv(e)) == f.one());
    }
    CHECK(code_of([&] { f.inv(f.zero()); }) == ErrorCode::ZeroVector);
  }
}

TEST_CASE("norm is multiplicative and reduce is a ring homomorphism") {
  std::mt19937_64 rng(0x5EED);
  const std::vector<ResidueField> fields{make_field(5), make_field(9), make_field(13), make_field(49),
                                         make_field(29)};
  for (int trial = 0; trial < 1000; ++trial) {
    const GaussianInt z = random_gauss(rng, 1000);
    const GaussianInt w = random_gauss(rng, 1000);
    CHECK(norm(z * w) == norm(z) * norm(w));
    const ResidueField &f = fields[static_cast<std::size_t>(trial) % fields.size()];
    CHECK(f.reduce(z * w) == f.mul(f.reduce(z), f.reduce(w)));
    CHECK(f.reduce(z + w) == f.add(f.reduce(z), f.reduce(w)));
    CHECK(f.reduce(z - w) == f.sub(f.reduce(z), f.reduce(w)));
  }
}

TEST_CASE("overflow is detected") {
  const GaussianInt big{std::int64_t{1} << 62, 0};
  CHECK(code_of([&] { (void)(big * big); }) == ErrorCode::Overflow);
  CHECK(code_of([&] { (void)(big + big); }) == ErrorCode::Overflow);
}

TEST_CASE("gcd examples") {
  CHECK(gauss_gcd({1, 1}, {2, 0}) == GaussianInt{1, 1});
  CHECK(gauss_gcd({3, 2}, {0, 0}) == GaussianInt{3, 2});
  CHECK(gauss_gcd({0, 0}, {-2, -3}) == normalize_associate({-2, -3}));
  CHECK(gauss_gcd({5, 0}, {3, 0}) == GaussianInt{1, 0});
  CHECK(code_of([] { gauss_gcd({0, 0}, {0, 0}); }) == ErrorCode::BothZero);
  CHECK(code_of([] { divmod({1, 0}, {0, 0}); }) == ErrorCode::BothZero);
}

TEST_CASE("gcd matches a brute-force divisor search for small norms") {
  // every Gaussian integer of norm <= 100 as a candidate divisor
  std::vector<GaussianInt> candidates;
  for (int x = -10; x <= 10; ++x)
    for (int y = -10; y <= 10; ++y)
      if (x * x + y * y > 0 && x * x + y * y <= 100)
        candidates.push_back({x, y});
  const auto divides_brute = [](GaussianInt d, GaussianInt z) {
    // z / d = z conj(d) / N(d) must be a Gaussian integer
    const GaussianInt t = z * conj(d);
    const std::int64_t n = norm(d);
    return t.re % n == 0 && t.im % n == 0;
  };
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    GaussianInt z = random_gauss(rng, 7);
    GaussianInt w = random_gauss(rng, 7);
    if (is_zero(z) && is_zero(w))
      continue;
    const GaussianInt g = gauss_gcd(z, w);
    CHECK(g.re > 0);
    CHECK(g.im >= 0);
    CHECK(divides(g, z));
    CHECK(divides(g, w));
    std::int64_t best = 0;
    for (const GaussianInt d : candidates)
      if (divides_brute(d, z) && divides_brute(d, w)) {
        CHECK(divides_brute(d, g));
        best = std::max(best, norm(d));
      }
    if (norm(g) <= 100)
      CHECK(best == norm(g));
  }
}

TEST_CASE("divmod remainder is small") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const GaussianInt a = random_gauss(rng, 10000);
    GaussianInt b = random_gauss(rng, 300);
    if (is_zero(b))
      b = {1, 0};
    const GaussianDivMod qr = divmod(a, b);
    CHECK(qr.quot * b + qr.rem == a);
    CHECK(2 * norm(qr.rem) <= norm(b));
  }
  CHECK(exact_div({2, 0}, {1, 1}) == GaussianInt{1, -1});
}

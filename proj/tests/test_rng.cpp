#include <doctest.h>

#include <cmath>

#include "gcp/rng.hpp"

using namespace gcp;

// Known-answer vectors shipped with Random123 (kat_vectors, philox4x32_10).
TEST_CASE("philox4x32-10 known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
        PhiloxBlock{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        PhiloxBlock{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        PhiloxBlock{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("unit conversion covers [0, 1)") {
  CHECK(to_unit(0, 0) == 0.0);
  CHECK(to_unit(0xffffffffu, 0xffffffffu) < 1.0);
  CHECK(to_unit(0x80000000u, 0) == 0.5);
}

TEST_CASE("uniforms look uniform") {
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_at(99, {static_cast<std::uint64_t>(i), 3, 4});
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(var - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("distinct streams differ") {
  CHECK(uniform_at(1, {0, 0, 0}) != uniform_at(2, {0, 0, 0}));
  CHECK(uniform_at(1, {0, 0, 0}) != uniform_at(1, {0, 1, 0}));
  CHECK(uniform_at(1, {0, 0, 0}) != uniform_at(1, {0, 0, 1}));
  CHECK(uniform_at(1, {0, 0, 0}) == uniform_at(1, {0, 0, 0}));
}

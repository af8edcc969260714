#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "halphen/errors.hpp"
#include "halphen/picard.hpp"
#include "halphen/random.hpp"

using namespace halphen;

namespace {

// Independent pairing on raw integer vectors (d, m1..m10).
long pairing(const std::array<long, 11>& a, const std::array<long, 11>& b) {
  long s = a[0] * b[0];
  for (int i = 1; i <= 10; ++i) s -= a[i] * b[i];
  return s;
}

std::array<long, 11> raw(const DivisorClass& c) {
  std::array<long, 11> r{};
  r[0] = c.d;
  for (int i = 0; i < 10; ++i) r[i + 1] = c.m[i];
  return r;
}

DivisorClass random_class(Rng& rng) {
  DivisorClass c;
  c.d = static_cast<int>(rng.between(-20, 20));
  for (auto& x : c.m) x = static_cast<int>(rng.between(-10, 10));
  return c;
}

}  // namespace

TEST_CASE("intersection examples") {
  CHECK(intersect(j_class(), j_class()) == -1);
  CHECK(intersect(c_class(13), j_class()) == 0);
  CHECK(intersect(f_class(), f_class()) == -2);
  CHECK(intersect(j_prime(), f_class()) == 1);
  const long g = 13;
  CHECK(9 * g * g - 8 * g * g - (g - 1) * (g - 1) - 1 == 24);
  CHECK(intersect(c_class(13), c_class(13)) == 24);
  CHECK(intersect(canonical(), canonical()) == -1);
}

TEST_CASE("mismatched point counts are rejected") {
  DivisorClass nine = j_prime();
  nine.n_points = 9;
  CHECK_THROWS_AS(intersect(nine, j_class()), Usage);
}

TEST_CASE("named classes") {
  const DivisorClass a6 = named_class("A(6)");
  CHECK(a6.d == 18);
  CHECK(a6.m == std::array<int, 10>{6, 6, 6, 6, 6, 6, 6, 6, 5, 1});
  CHECK(named_class("K") == canonical());
  CHECK(canonical() == -j_class());
  CHECK(canonical().m == std::array<int, 10>{-1, -1, -1, -1, -1, -1, -1, -1, -1, -1});
  CHECK((named_class("C(13)") - named_class("A(6)") - named_class("B(6)")).is_zero());
  CHECK(named_class("E3") == exceptional(3));
  CHECK(exceptional(3).m[2] == -1);
  CHECK(named_class("J'") == j_class() + exceptional(10));
  CHECK_THROWS_AS(named_class("Q"), Usage);
  CHECK_THROWS_AS(c_class(4), Usage);
  CHECK_THROWS_AS(a_class(0), Usage);
  for (int s = 1; s <= 20; ++s) CHECK(c_class(2 * s + 1) == a_class(s) + b_class(s));
}

TEST_CASE("Euler characteristic") {
  const int s = 6;
  const auto a = a_class(s), b = b_class(s);
  CHECK(euler_char(b - a) == -1);
  CHECK(euler_char(DivisorClass{}) == 1);
  // A^2 = 2s - 2 and A.K = 0, so chi(A) = s; h0 - h1 + h2 = (s+1) - 1 + 0.
  for (int t = 1; t <= 20; ++t) {
    const auto at = raw(a_class(t));
    const auto k = raw(canonical());
    CHECK(pairing(at, at) == 2 * t - 2);
    CHECK(pairing(at, k) == 0);
    CHECK(euler_char(a_class(t)) == t);
    CHECK(euler_char(2 * a_class(t)) == 4 * t - 3);
  }
}

TEST_CASE("arithmetic genus") {
  CHECK(arithmetic_genus(c_class(13)) == 13);
  for (int g = 3; g <= 41; g += 2) CHECK(arithmetic_genus(c_class(g)) == g);
  for (int s = 1; s <= 20; ++s) CHECK(arithmetic_genus(a_class(s)) == s);
  CHECK(arithmetic_genus(j_class()) == 1);
}

TEST_CASE("Serre duality") {
  const auto a = a_class(6), b = b_class(6);
  CHECK(serre_dual(b - a) == a - b - j_class());
  CHECK(serre_dual(DivisorClass{}) == canonical());
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const auto d = random_class(rng);
    CHECK(serre_dual(serre_dual(d)) == d);
  }
}

TEST_CASE("lattice identity report") {
  for (int s : {6, 7}) {
    const auto rows = verify_lattice_identities(s);
    CHECK(rows.size() == 11);
    for (const auto& r : rows) {
      INFO(r.identity);
      CHECK(r.pass);
      CHECK(r.lhs == r.rhs);
    }
  }
  DivisorClass bad = f_class();
  bad.m[8] = 0;
  const auto rows = verify_lattice_identities(6, &bad);
  bool jf_failed = false;
  for (const auto& r : rows)
    if (r.identity == "J'.F = 1" && !r.pass) jf_failed = true;
  CHECK(jf_failed);
}

TEST_CASE("pairing is symmetric and bilinear") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_class(rng), y = random_class(rng), z = random_class(rng);
    const int k = static_cast<int>(rng.between(-5, 5));
    CHECK(intersect(x, y) == intersect(y, x));
    CHECK(intersect(x, y) == pairing(raw(x), raw(y)));
    CHECK(intersect(x + y, z) == intersect(x, z) + intersect(y, z));
    CHECK(intersect(k * x, z) == k * intersect(x, z));
  }
}

TEST_CASE("Riemann-Roch is compatible with Serre duality") {
  Rng rng(29);
  const auto k = canonical();
  for (int i = 0; i < 200; ++i) {
    const auto d = random_class(rng);
    // chi(D) - chi(K - D) = D.(D-K)/2 - (K-D).(-D)/2 = 0.
    CHECK(euler_char(d) == euler_char(serre_dual(d)));
    CHECK(2 * (euler_char(d) - 1) == intersect(d, d - k));
  }
}

TEST_CASE("degrees on the du Val curve") {
  for (int s = 1; s <= 20; ++s) {
    const auto c = c_class(2 * s + 1);
    CHECK(intersect(b_class(s), c) == s + 1);
    CHECK(intersect(a_class(s), c) == 3 * s - 1);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "halphen/dense.hpp"
#include "halphen/random.hpp"
#include "halphen/unipoly.hpp"

using namespace halphen;

namespace {

MatrixFp random_fp(Index r, Index c, Rng& rng) {
  MatrixFp m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = rng.residue();
  return m;
}

// Integer matrix of rank <= k with small entries.
std::vector<std::vector<long>> low_rank_integer(int n, int k, Rng& rng) {
  std::vector<std::vector<long>> a(n, std::vector<long>(k)), b(k, std::vector<long>(n));
  for (auto& row : a)
    for (auto& x : row) x = rng.between(-3, 3);
  for (auto& row : b)
    for (auto& x : row) x = rng.between(-3, 3);
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 0; t < k; ++t) m[i][j] += a[i][t] * b[t][j];
  return m;
}

// Brute-force multiplicity of a root by repeated synthetic division.
int multiplicity_oracle(std::vector<u64> c, u64 a, u64 p) {
  int mult = 0;
  while (c.size() > 1) {
    std::vector<u64> q(c.size() - 1);
    u64 carry = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      const u64 v = (c[i] + carry) % p;
      if (i == 0) {
        if (v != 0) return mult;
      } else {
        q[i - 1] = v;
        carry = static_cast<u64>(static_cast<u128>(v) * a % p);
      }
    }
    c = q;
    ++mult;
  }
  return mult;
}

UniPoly<Fp> poly(std::initializer_list<long> low_to_high) {
  std::vector<Fp> c;
  for (long v : low_to_high) c.push_back(Fp(v));
  return UniPoly<Fp>(c);
}

std::set<u64> root_values(const std::vector<FieldRoot>& rs) {
  std::set<u64> s;
  for (const auto& r : rs) s.insert(r.value.value());
  return s;
}

}  // namespace

TEST_CASE("identity and zero matrices") {
  PrimeScope scope(kMersenne61);
  const auto id = rank_and_kernel<Fp>(MatrixFp::Identity(3, 3));
  CHECK(id.rank == 3);
  CHECK(id.kernel.rows() == 0);
  const auto z = rank_and_kernel<Fp>(MatrixFp::Zero(4, 6));
  CHECK(z.rank == 0);
  CHECK(z.kernel.rows() == 6);
}

TEST_CASE("kernel vectors are annihilated and canonical") {
  PrimeScope scope(kMersenne61);
  Rng rng(7);
  MatrixFp m = random_fp(5, 9, rng);
  m.row(4) = m.row(0) + m.row(1);
  const auto rk = rank_and_kernel<Fp>(m);
  CHECK(rk.rank == 4);
  REQUIRE(rk.kernel.rows() == 5);
  const MatrixFp prod = m * rk.kernel.transpose();
  CHECK(all_zero(prod));
  // Identity block on the free columns.
  const auto e = row_echelon(m);
  std::vector<Index> free;
  for (Index c = 0; c < 9; ++c)
    if (std::find(e.pivot_cols.begin(), e.pivot_cols.end(), c) == e.pivot_cols.end()) free.push_back(c);
  for (Index k = 0; k < 5; ++k)
    for (Index f = 0; f < 5; ++f) CHECK(rk.kernel(k, free[f]) == Fp(k == f ? 1 : 0));
}

TEST_CASE("rank agrees with transpose, pivot order and rational elimination") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = static_cast<int>(rng.between(3, 20));
    const auto m = low_rank_integer(20, k, rng);
    MatrixQ q(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) q(i, j) = Rational(m[i][j]);
    const Index rq = rank(q);
    CHECK(rq == rank<Rational>(q.transpose()));
    for (u64 p : {kMersenne61, kSecondPrime}) {
      PrimeScope scope(p);
      MatrixFp f(20, 20);
      for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) f(i, j) = Fp(m[i][j]);
      CHECK(rank(f) == rq);
      CHECK(rank<Fp>(f.transpose()) == rq);
      CHECK(row_echelon(f, false, RowOrder::Reverse).rank == rq);
    }
  }
}

TEST_CASE("fast elimination matches the generic route bit for bit") {
  // 2^62 - 57 exercises the narrow-block path.
  for (u64 p : {kMersenne61, kSecondPrime, u64{4611686018427387847ull}, u64{101}}) {
    PrimeScope scope(p);
    Rng rng(p);
    MatrixFp m = random_fp(120, 150, rng);
    for (Index i = 60; i < 120; ++i) m.row(i) = m.row(i - 60) * rng.residue() + m.row(i - 59) * rng.residue();
    const auto fast = row_echelon(m);
    const auto slow = detail::echelon_generic(m, true, RowOrder::Forward);
    CHECK(fast.rank == slow.rank);
    CHECK(fast.pivot_cols == slow.pivot_cols);
    CHECK(fast.rows == slow.rows);
    CHECK(row_echelon(m, true, RowOrder::Reverse).rows == slow.rows);
  }
}

TEST_CASE("mixed fields are rejected") {
  PrimeScope scope(101);
  std::vector<FieldScalar> e{Rational(1), PrimeResidue{101, 3}};
  CHECK_THROWS_AS(make_dense(1, 2, e), Usage);
  std::vector<FieldScalar> two_primes{PrimeResidue{101, 1}, PrimeResidue{103, 3}};
  CHECK_THROWS_AS(make_dense(1, 2, two_primes), Usage);
  std::vector<FieldScalar> ok{PrimeResidue{101, 1}, PrimeResidue{101, 3}};
  CHECK(std::get<MatrixFp>(make_dense(1, 2, ok))(0, 1) == Fp(3));
}

TEST_CASE("roots_in_field examples") {
  {
    PrimeScope scope(101);
    CHECK(root_values(roots_in_field(poly({-1, 0, 1}))) == std::set<u64>{1, 100});
  }
  {
    PrimeScope scope(7);
    CHECK(roots_in_field(poly({1, 0, 1})).empty());
  }
  {
    PrimeScope scope(5);
    const auto f = poly({-2, 1}) * poly({-3, 1}) * poly({1, 1, 1});
    std::set<u64> brute;
    for (u64 a = 0; a < 5; ++a)
      if (f(Fp::from_raw(a)).is_zero()) brute.insert(a);
    CHECK(brute == std::set<u64>{2, 3});
    CHECK(root_values(roots_in_field(f)) == brute);
  }
  PrimeScope scope(101);
  CHECK_THROWS_AS(roots_in_field(UniPoly<Fp>()), Usage);
}

TEST_CASE("roots_in_field matches exhaustive scan with multiplicities") {
  Rng rng(3);
  for (u64 p : {u64{7}, u64{101}, u64{1009}, u64{9973}}) {
    PrimeScope scope(p);
    for (int trial = 0; trial < 8; ++trial) {
      // Product of random linear factors (some repeated) and a random cofactor.
      UniPoly<Fp> f = UniPoly<Fp>::constant(rng.nonzero_residue());
      const int nlin = static_cast<int>(rng.between(0, 5));
      for (int i = 0; i < nlin; ++i) f = f * UniPoly<Fp>::linear_root(Fp::from_raw(rng.below(std::min<u64>(p, 6))));
      std::vector<Fp> cof;
      for (int i = 0; i < 4; ++i) cof.push_back(rng.residue());
      cof.push_back(Fp(1));
      f = f * UniPoly<Fp>(cof);
      const auto roots = roots_in_field(f);
      std::vector<u64> coeffs;
      for (const Fp& c : f.coeffs()) coeffs.push_back(c.value());
      std::set<u64> brute;
      for (u64 a = 0; a < p; ++a)
        if (f(Fp::from_raw(a)).is_zero()) brute.insert(a);
      CHECK(root_values(roots) == brute);
      for (const auto& r : roots) CHECK(r.multiplicity == multiplicity_oracle(coeffs, r.value.value(), p));
    }
  }
}

TEST_CASE("gcd divides, resultant vanishes iff common factor") {
  PrimeScope scope(kMersenne61);
  Rng rng(5);
  auto rand_poly = [&](int deg) {
    std::vector<Fp> c;
    for (int i = 0; i < deg; ++i) c.push_back(rng.residue());
    c.push_back(rng.nonzero_residue());
    return UniPoly<Fp>(c);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const bool shared = trial % 2 == 0;
    const auto h = rand_poly(static_cast<int>(rng.between(1, 3)));
    auto f = rand_poly(static_cast<int>(rng.between(1, 6)));
    auto g = rand_poly(static_cast<int>(rng.between(1, 6)));
    if (shared) {
      f = f * h;
      g = g * h;
    }
    const auto d = gcd(f, g);
    CHECK((f % d).is_zero());
    CHECK((g % d).is_zero());
    CHECK(resultant(f, g).is_zero() == (d.degree() > 0));
    if (shared) CHECK(d.degree() >= h.degree());
  }
}

TEST_CASE("resultant matches the Sylvester determinant over the rationals") {
  // (X - 1)(X - 2) and X - 3: product of g(roots of f) = (1-3)(2-3) = 2.
  UniPoly<Rational> f(std::vector<Rational>{2, -3, 1});
  UniPoly<Rational> g(std::vector<Rational>{-3, 1});
  CHECK(resultant(f, g) == Rational(2));
  CHECK(resultant(g, f) == Rational(2));
}

TEST_CASE("interpolation recovers a polynomial") {
  PrimeScope scope(kMersenne61);
  const auto f = poly({5, -1, 0, 7, 2});
  std::vector<Fp> xs, ys;
  for (int k = 0; k < 5; ++k) {
    xs.push_back(Fp(k * 3 + 1));
    ys.push_back(f(xs.back()));
  }
  CHECK(interpolate(xs, ys) == f);
}

TEST_CASE("rational points reduce coordinate-wise") {
  // 4 * 76 = 304 = 3 * 101 + 1
  u64 inv4 = 0;
  for (u64 x = 1; x < 101; ++x)
    if (4 * x % 101 == 1) inv4 = x;
  CHECK(inv4 == 76);
  u64 inv8 = 0;
  for (u64 x = 1; x < 101; ++x)
    if (8 * x % 101 == 1) inv8 = x;
  const u64 y = (101 - 33 * inv8 % 101) % 101;
  const auto r = reduce_rational_point({Rational(1, 4), Rational(-33, 8)}, 101);
  CHECK(r[0] == 76);
  CHECK(r[1] == y);
  CHECK(inv8 == 38);
  CHECK(r[1] == 59);
  const auto q = reduce_rational_point({Rational(-2), Rational(3)}, kMersenne61);
  CHECK(q[0] == kMersenne61 - 2);
  CHECK(q[1] == 3);
  try {
    reduce_rational_point({Rational(1, 4), Rational(-33, 8)}, 2);
    FAIL("expected BadPrime");
  } catch (const BadPrime& e) {
    CHECK(std::string(e.what()).find("coordinate x") != std::string::npos);
  }
}

TEST_CASE("prime field validation") {
  CHECK_THROWS_AS(PrimeScope(100), Usage);
  CHECK(is_prime_u64(kMersenne61));
  CHECK(is_prime_u64(kSecondPrime));
  CHECK(!is_prime_u64(kSecondPrime + 2));
}

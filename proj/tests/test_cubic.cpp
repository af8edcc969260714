#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <set>

#include "halphen/cubic.hpp"
#include "halphen/errors.hpp"
#include "halphen/unipoly.hpp"

using namespace halphen;

namespace {

using Pt = ProjPoint<Fp>;

// y^2 z = x^3 - x z^2
PlaneForm<Fp> legendre_cubic() {
  PlaneForm<Fp> f(3);
  f.coeff(0, 2) = Fp(1);
  f.coeff(3, 0) = Fp(-1);
  f.coeff(1, 0) = Fp(1);
  return f;
}

// Affine Weierstrass arithmetic with long-form coefficients, independent of
// the projective chord construction in the library.
struct Weier {
  Fp a1, a2, a3, a4, a6;
  using P = std::optional<std::pair<Fp, Fp>>;

  bool on(const P& p) const {
    if (!p) return true;
    const auto [x, y] = *p;
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6;
  }
  P add(const P& p, const P& q) const {
    if (!p) return q;
    if (!q) return p;
    const auto [x1, y1] = *p;
    const auto [x2, y2] = *q;
    Fp lambda;
    if (x1 == x2) {
      if (y1 + y2 + a1 * x2 + a3 == Fp(0)) return std::nullopt;
      lambda = (Fp(3) * x1 * x1 + Fp(2) * a2 * x1 + a4 - a1 * y1) / (Fp(2) * y1 + a1 * x1 + a3);
    } else {
      lambda = (y2 - y1) / (x2 - x1);
    }
    const Fp nu = y1 - lambda * x1;
    const Fp x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
    const Fp y3 = -(lambda + a1) * x3 - nu - a3;
    return std::make_pair(x3, y3);
  }
  int order(const P& p, int max_k) const {
    P acc = p;
    for (int k = 1; k <= max_k; ++k) {
      if (!acc) return k;
      acc = add(acc, p);
    }
    return 0;
  }
};

Weier tate(Fp b, Fp c) { return {Fp(1) - c, -b, -b, Fp(0), Fp(0)}; }

// Random affine points on an affine-monic-in-y cubic.
std::vector<Pt> random_points(const PlaneForm<Fp>& f, int n, Rng& rng) {
  std::vector<Pt> out;
  while (static_cast<int>(out.size()) < n) {
    const Fp x0 = rng.residue();
    for (const auto& r : roots_in_field(f.restrict_x(x0))) {
      const Pt p = affine_point(x0, r.value);
      if (std::none_of(out.begin(), out.end(), [&](const Pt& q) { return same_point(p, q); })) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

PointConfig config_from(const std::vector<Pt>& pts, u64 p) {
  PointConfig c;
  c.field = FieldKind::Prime;
  c.p = p;
  for (const auto& q : pts) {
    const Pt a = normalized(q);
    c.points.push_back({Rational(a[0].value()), Rational(a[1].value())});
  }
  return c;
}

FormalSum<Fp> e_plus(const std::vector<Pt>& pts, const Pt& extra) {
  FormalSum<Fp> s;
  s.lines = 3;
  for (const auto& q : pts) s.terms.push_back({q, -1});
  s.terms.push_back({extra, 1});
  return s;
}

}  // namespace

TEST_CASE("cubic through the example points") {
  const PointConfig cfg = example_config();
  REQUIRE(cfg.points.size() == 9);
  CHECK(cfg.points[8][0] == Rational(1, 4));
  CHECK(cfg.points[8][1] == Rational(-33, 8));
  {
    PrimeScope scope(kMersenne61);
    const auto cm = cubic_through_nine(cfg);
    CHECK(cm.smooth);
    for (const auto& p : cfg.points_mod_active()) CHECK(cm.cubic(p).is_zero());
  }
  const auto exact = cubic_through(cfg.points_rational());
  for (const auto& p : cfg.points_rational()) CHECK(is_zero(exact.cubic(p)));
  CHECK(exact.smooth);
}

TEST_CASE("a 3x3 grid lies on a pencil of cubics") {
  PrimeScope scope(kMersenne61);
  std::vector<Pt> grid;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) grid.push_back(affine_point(Fp(i), Fp(j)));
  CHECK_THROWS_AS(cubic_through(grid), DegenerateConfig);
  // The grid is the base locus of the pencil x(x-1)(x-2), y(y-1)(y-2).
  CHECK(halphen_index(config_from(grid, kMersenne61), 5) == 1);
  std::vector<Pt> line;
  for (int i = 0; i < 9; ++i) line.push_back(affine_point(Fp(i), Fp(0)));
  CHECK_THROWS_AS(halphen_index(config_from(line, kMersenne61), 5), DegenerateConfig);
}

TEST_CASE("cubic recovered from its own GF(101) points") {
  PrimeScope scope(101);
  const auto f = legendre_cubic();
  std::vector<Pt> pts;
  for (u64 x = 0; x < 101 && pts.size() < 9; ++x)
    for (u64 y = 0; y < 101 && pts.size() < 9; ++y) {
      const Pt p = affine_point(Fp::from_raw(x), Fp::from_raw(y));
      if (f(p).is_zero()) pts.push_back(p);
    }
  REQUIRE(pts.size() == 9);
  const auto cm = cubic_through(pts);
  // Scale so the y^2 z coefficient matches, then compare.
  const Fp s = f.coeff(0, 2) / cm.cubic.coeff(0, 2);
  CHECK(s * cm.cubic == f);
  CHECK(cm.smooth);
}

TEST_CASE("third intersection") {
  PrimeScope scope(kMersenne61);
  const auto f = legendre_cubic();
  const Pt r = third_intersection(f, affine_point(Fp(0), Fp(0)), affine_point(Fp(1), Fp(0)));
  CHECK(same_point(r, affine_point(Fp(-1), Fp(0))));
  const Pt inf{Fp(0), Fp(1), Fp(0)};
  CHECK(same_point(third_intersection(f, inf, inf), inf));
  CHECK_THROWS_AS(third_intersection(f, affine_point(Fp(2), Fp(2)), inf), Usage);

  const auto cm = cubic_through_nine(example_config());
  Rng rng(41);
  const auto pts = random_points(cm.cubic, 20, rng);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    CHECK(cm.cubic(third_intersection(cm.cubic, pts[i], pts[i + 1])).is_zero());
    CHECK(cm.cubic(third_intersection(cm.cubic, pts[i], pts[i])).is_zero());
  }
}

TEST_CASE("reduce_class") {
  PrimeScope scope(kMersenne61);
  const auto cfg = example_config();
  const auto cm = cubic_through_nine(cfg);
  const auto pts = cfg.points_mod_active();
  FormalSum<Fp> single;
  single.terms.push_back({pts[3], 1});
  CHECK(same_point(reduce_class(cm.cubic, single), pts[3]));

  FormalSum<Fp> chord;
  chord.lines = 1;
  chord.terms = {{pts[0], -1}, {pts[1], -1}};
  CHECK(same_point(reduce_class(cm.cubic, chord), third_intersection(cm.cubic, pts[0], pts[1])));

  const auto sum = e_plus(pts, pts[8]);
  const Pt fwd = reduce_class(cm.cubic, sum, ReductionOrder::Forward);
  CHECK(same_point(fwd, reduce_class(cm.cubic, sum, ReductionOrder::Reverse)));
  for (u64 seed = 0; seed < 5; ++seed)
    CHECK(same_point(fwd, reduce_class(cm.cubic, sum, ReductionOrder::Shuffled, seed)));
  CHECK(same_point(fwd, tenth_point(cfg, 1)));

  FormalSum<Fp> bad;
  bad.terms = {{pts[0], 1}, {pts[1], 1}};
  CHECK_THROWS_AS(reduce_class(cm.cubic, bad), Usage);
}

TEST_CASE("Halphen index") {
  PrimeScope scope(kMersenne61);
  CHECK_FALSE(halphen_index(example_config(), 40).has_value());

  const auto cfg7 = gen_halphen_config(7, 1);
  CHECK(halphen_index(cfg7, 40) == 7);
  // Brute-force multiples: h e != 0 for h < 7, i.e. T(h) != p9.
  const auto p9 = cfg7.points_mod_active()[8];
  for (int h = 1; h <= 7; ++h) CHECK(same_point(tenth_point(cfg7, h), p9) == (h == 7));

  // p9 cut out by the cubic through the other eight: e = 0.
  const auto f = legendre_cubic();
  Rng rng(3);
  auto pts = random_points(f, 8, rng);
  FormalSum<Fp> s;
  s.lines = 3;
  for (const auto& q : pts) s.terms.push_back({q, -1});
  pts.push_back(reduce_class(f, s));
  CHECK(halphen_index(config_from(pts, kMersenne61), 10) == 1);
}

TEST_CASE("tenth points") {
  PrimeScope scope(kMersenne61);
  const auto cfg = gen_halphen_config(7, 1);
  const auto cm = cubic_through_nine(cfg);
  const auto pts = cfg.points_mod_active();
  const auto ts = tenth_points(cfg, 30);
  for (int g = 1; g <= 16; ++g) CHECK(same_point(ts[g - 1], ts[g + 7 - 1]));
  for (int g = 1; g <= 30; ++g) {
    CHECK(cm.cubic(ts[g - 1]).is_zero());
    const Pt prev = g == 1 ? pts[8] : ts[g - 2];
    CHECK(same_point(ts[g - 1], reduce_class(cm.cubic, e_plus(pts, prev))));
  }
  const auto ex = example_config();
  const auto exm = cubic_through_nine(ex);
  for (int g = 1; g <= 15; ++g) CHECK(exm.cubic(tenth_point(ex, g)).is_zero());
  CHECK(same_point(tenth_point(ex, 0), ex.points_mod_active()[8]));
}

TEST_CASE("torsion parametrizations have exact order") {
  PrimeScope scope(kMersenne61);
  // d = 2 gives b = 4, c = 2.
  const Fp d(2);
  const Fp b = d * d * d - d * d, c = d * d - d;
  CHECK(b == Fp(4));
  CHECK(c == Fp(2));
  const Weier w = tate(b, c);
  const Weier::P origin = std::make_pair(Fp(0), Fp(0));
  REQUIRE(w.on(origin));
  CHECK(w.order(origin, 20) == 7);

  const auto tm = torsion_model(7, d);
  CHECK(point_order(tm.cubic, tm.torsion, 20) == 7);
  Rng rng(9);
  for (int m = 2; m <= 9; ++m) {
    const auto model = torsion_model(m, Fp(rng.between(3, 1000)));
    CHECK(model.cubic(model.torsion).is_zero());
    CHECK(point_order(model.cubic, model.torsion, 30) == m);
  }
  CHECK_THROWS_AS(torsion_model(10, Fp(3)), Unsupported);
  CHECK_THROWS_AS(torsion_model(1, Fp(3)), Unsupported);
}

TEST_CASE("projective group law agrees with affine formulas") {
  PrimeScope scope(kMersenne61);
  const Fp d(5);
  const Fp b = d * d * d - d * d, c = d * d - d;
  const Weier w = tate(b, c);
  const auto tm = torsion_model(7, d);
  Rng rng(13);
  const auto pts = random_points(tm.cubic, 12, rng);
  auto affine = [](const Pt& p) -> Weier::P {
    if (p[2].is_zero()) return std::nullopt;
    const Pt n = normalized(p);
    return std::make_pair(n[0], n[1]);
  };
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    const Pt s = group_add(tm.cubic, pts[i], pts[i + 1]);
    CHECK(affine(s) == w.add(affine(pts[i]), affine(pts[i + 1])));
    // Associativity.
    const Pt l = group_add(tm.cubic, s, pts[i + 2]);
    const Pt r = group_add(tm.cubic, pts[i], group_add(tm.cubic, pts[i + 1], pts[i + 2]));
    CHECK(same_point(l, r));
    CHECK(same_point(group_add(tm.cubic, pts[i], group_neg(tm.cubic, pts[i])), flex_origin()));
  }
}

TEST_CASE("reduce_class is a homomorphism") {
  PrimeScope scope(kMersenne61);
  const auto tm = torsion_model(7, Fp(11));
  const Pt o = flex_origin();
  Rng rng(21);
  const auto pts = random_points(tm.cubic, 24, rng);
  // alpha = [P1] + [P2] - [O], beta = [P3] + [P4] - [O]; [alpha] + [beta] - [O] reduced.
  for (std::size_t i = 0; i + 3 < pts.size(); i += 4) {
    FormalSum<Fp> alpha{0, {{pts[i], 1}, {pts[i + 1], 1}, {o, -1}}};
    FormalSum<Fp> beta{0, {{pts[i + 2], 1}, {pts[i + 3], 1}, {o, -1}}};
    FormalSum<Fp> both{0, {{pts[i], 1}, {pts[i + 1], 1}, {pts[i + 2], 1}, {pts[i + 3], 1}, {o, -3}}};
    const Pt ra = reduce_class(tm.cubic, alpha), rb = reduce_class(tm.cubic, beta);
    CHECK(same_point(ra, group_add(tm.cubic, pts[i], pts[i + 1])));
    CHECK(same_point(reduce_class(tm.cubic, both), group_add(tm.cubic, ra, rb)));
  }
}

TEST_CASE("generated configurations") {
  PrimeScope scope(kMersenne61);
  for (int m = 2; m <= 9; ++m) {
    INFO("order ", m);
    const auto cfg = gen_halphen_config(m, 100 + static_cast<u64>(m));
    CHECK(cfg.provenance.kind == "generated");
    CHECK(cfg.provenance.order == m);
    CHECK_NOTHROW(cfg.validate());
    CHECK(halphen_index(cfg, 40) == m);
    CHECK(cubic_through_nine(cfg).smooth);
  }
  // Deterministic in the seed.
  const auto a = gen_halphen_config(7, 1), b = gen_halphen_config(7, 1), c = gen_halphen_config(7, 2);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK_THROWS_AS(gen_halphen_config(11, 1), Unsupported);
}

TEST_CASE("bad primes are named") {
  const auto cfg = example_config();
  PrimeScope scope(5);
  // (2, 5) and (52, 375) both reduce to (2, 0).
  try {
    cfg.points_mod_active();
    FAIL("expected BadPrime");
  } catch (const BadPrime& e) {
    CHECK(std::string(e.what()).find("p3 and p5") != std::string::npos);
  }
  PrimeScope other(kSecondPrime);
  const auto gen = [] {
    PrimeScope s(kMersenne61);
    return gen_halphen_config(7, 1);
  }();
  CHECK_THROWS_AS(gen.points_mod_active(), Usage);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "halphen/errors.hpp"
#include "halphen/wahl.hpp"

using namespace halphen;

namespace {

using Pt = ProjPoint<Fp>;

bool has_multiplicity(const PlaneForm<Fp>& f, const Pt& p, int m) {
  std::vector<PlaneForm<Fp>> layer{f};
  for (int order = 0; order < m; ++order) {
    std::vector<PlaneForm<Fp>> next;
    for (const auto& g : layer) {
      if (!g(p).is_zero()) return false;
      if (g.degree() > 0)
        for (int v = 0; v < 3; ++v) next.push_back(g.partial(v));
    }
    layer = std::move(next);
  }
  return true;
}

PlaneForm<Fp> random_form(int d, Rng& rng) {
  PlaneForm<Fp> f(d);
  for (auto& c : f.coeffs()) c = rng.residue();
  return f;
}

PlaneCurve smooth_quartic(u64 seed) {
  Rng rng(seed);
  for (;;) {
    const PlaneForm<Fp> f = random_form(4, rng);
    const PlaneCurve c = make_curve(f, 3, {}, {}, Fp(0));
    if (singularity_audit(c).pass) return c;
  }
}

Index matrix_rank(const PlaneCurve& c, const std::vector<PlaneForm<Fp>>& adj, const std::vector<CurveSample>& s) {
  return rank(wahl_matrix(c, adj, s));
}

}  // namespace

TEST_CASE("du Val member of genus 3") {
  PrimeScope scope(kMersenne61);
  const auto cfg = example_config();
  const PlaneCurve c = pick_duval_member(cfg, 3, 1);
  CHECK(c.form.degree() == 9);
  REQUIRE(c.singular.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    const int m = i < 8 ? 3 : 2;
    CHECK(c.singular[i].mult == m);
    CHECK(has_multiplicity(c.form, c.singular[i].point, m));
    CHECK_FALSE(has_multiplicity(c.form, c.singular[i].point, m + 1));
  }
  // Chart points are the sheared source points.
  const auto src = cfg.points_mod_active();
  for (std::size_t i = 0; i < 9; ++i)
    CHECK(same_point(c.singular[i].point, {src[i][0] - c.shear * src[i][1], src[i][1], Fp(1)}));
  const auto rep = singularity_audit(c);
  CHECK(rep.pass);
  CHECK(rep.exponents == std::vector<int>{6, 6, 6, 6, 6, 6, 6, 6, 2});
  CHECK(rep.residual_squarefree);
  CHECK(rep.infinity_smooth);
  CHECK(adjoint_basis(c).size() == 3);
  CHECK(omega3_dim(c) == 10);
}

TEST_CASE("audit of a genus 13 member") {
  PrimeScope scope(kMersenne61);
  const auto cfg = gen_halphen_config(7, 1);
  const PlaneCurve c = pick_duval_member(cfg, 13, 1);
  CHECK(c.form.degree() == 39);
  const auto rep = singularity_audit(c);
  CHECK(rep.pass);
  REQUIRE(rep.exponents.size() == 9);
  CHECK(rep.exponents[0] == 13 * 12);
  CHECK(rep.exponents[8] == 12 * 11);
  // 39 * 38 - 8 * 156 - 132
  CHECK(rep.residual_degree == 1482 - 8 * 156 - 132);

  MultiplicitySpec adj;
  adj.degree = 36;
  for (const auto& s : c.singular) adj.conditions.push_back({s.point, s.mult - 1});
  CHECK(adj.rows() == 8 * 78 + 66);
  CHECK(adj.rows() == 690);
  CHECK(adj.cols() == 703);
  CHECK(adjoint_basis(c).size() == 13);
}

TEST_CASE("a degenerate basis exhausts the retry budget") {
  PrimeScope scope(kMersenne61);
  const auto cfg = example_config();
  const auto cubic = cubic_through_nine(cfg).cubic;
  PlaneForm<Fp> f = cubic;
  for (int k = 1; k < 3; ++k) f = f * cubic;
  const auto spec = du_val_spec(cfg.points_mod_active(), 3);
  CHECK_THROWS_AS(pick_member({f}, 3, spec.conditions, {}, 1), RetryExhausted);
}

TEST_CASE("smooth quartic") {
  PrimeScope scope(kMersenne61);
  const PlaneCurve q = smooth_quartic(5);
  const auto rep = singularity_audit(q);
  CHECK(rep.pass);
  CHECK(rep.residual_degree == 12);
  CHECK(rep.residual_squarefree);
  const auto adj = adjoint_basis(q);
  CHECK(adj.size() == 3);
  for (const auto& a : adj) CHECK(a.degree() == 1);
  CHECK(omega3_dim(q) == 10);
  const auto s = sample_points(q, 6 * 3 + 5, 2);
  const MatrixFp m = wahl_matrix(q, adj, s);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 23);
  CHECK(rank(m) == 3);
  CHECK(symbolic_wahl_rank(q, adj) == 3);
  CHECK(10 - rank(m) == 7);
}

TEST_CASE("a doubled curve fails the resultant clause") {
  PrimeScope scope(kMersenne61);
  const PlaneCurve q = smooth_quartic(6);
  PlaneCurve dbl = q;
  dbl.form = q.form * q.form;
  const auto rep = singularity_audit(dbl);
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures.front().find("vanishes identically") != std::string::npos);
}

TEST_CASE("samples") {
  PrimeScope scope(kMersenne61);
  PlaneForm<Fp> conic(2);
  conic.coeff(2, 0) = Fp(1);
  conic.coeff(0, 2) = Fp(1);
  conic.coeff(0, 0) = Fp(-1);
  const PlaneCurve c = make_curve(conic, 0, {}, {}, Fp(0));
  const auto s = sample_points(c, 5, 3);
  REQUIRE(s.size() == 5);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK((s[i].x * s[i].x + s[i].y * s[i].y - Fp(1)).is_zero());
    for (std::size_t j = 0; j < i; ++j) CHECK_FALSE((s[i].x == s[j].x && s[i].y == s[j].y));
  }
  const PlaneCurve q = smooth_quartic(7);
  CHECK_THROWS_AS(sample_points(q, 12, 1), Precondition);
  CHECK_NOTHROW(sample_points(q, 13, 1));
}

TEST_CASE("samples avoid assigned points") {
  PrimeScope scope(101);
  // Small field: every affine point of the curve gets drawn eventually.
  PlaneForm<Fp> conic(2);
  conic.coeff(2, 0) = Fp(1);
  conic.coeff(0, 2) = Fp(1);
  conic.coeff(0, 0) = Fp(-1);
  const Pt avoided{Fp(1), Fp(0), Fp(1)};
  const PlaneCurve c = make_curve(conic, 0, {}, {avoided}, Fp(0));
  const auto s = sample_points(c, 60, 1);
  for (const auto& p : s) CHECK_FALSE((p.x == Fp(1) && p.y == Fp(0)));
  CHECK_THROWS_AS(sample_points(c, 200, 1), BadPrime);
}

TEST_CASE("Wahl entries are antisymmetric") {
  PrimeScope scope(kMersenne61);
  const auto c = pick_duval_member(example_config(), 5, 2);
  const auto adj = adjoint_basis(c);
  const auto s = sample_points(c, 35, 4);
  for (const auto& p : s) {
    CHECK(wahl_entry(c, adj[1], adj[1], p).is_zero());
    CHECK(wahl_entry(c, adj[2], adj[0], p) == -wahl_entry(c, adj[0], adj[2], p));
  }
  const MatrixFp m = wahl_matrix(c, adj, s);
  CHECK(m(0, 3) == wahl_entry(c, adj[0], adj[1], s[3]));
  CHECK(m(5, 7) == wahl_entry(c, adj[1], adj[3], s[7]));
}

TEST_CASE("rank invariants") {
  PrimeScope scope(kMersenne61);
  const int g = 5;
  const auto c = pick_duval_member(example_config(), g, 3);
  const auto adj = adjoint_basis(c);
  const auto s1 = sample_points(c, 6 * g + 5, 10);
  const auto s2 = sample_points(c, 6 * g + 5, 11);
  for (const auto& a : s1)
    for (const auto& b : s2) REQUIRE_FALSE((a.x == b.x && a.y == b.y));
  const Index r = matrix_rank(c, adj, s1);
  CHECK(r == matrix_rank(c, adj, s2));

  // Random change of adjoint basis.
  Rng rng(99);
  MatrixFp t(g, g);
  do {
    for (Index i = 0; i < g; ++i)
      for (Index j = 0; j < g; ++j) t(i, j) = rng.residue();
  } while (rank(t) < g);
  std::vector<PlaneForm<Fp>> mixed;
  for (Index i = 0; i < g; ++i) {
    PlaneForm<Fp> f(adj[0].degree());
    for (Index j = 0; j < g; ++j) f = f + t(i, j) * adj[static_cast<std::size_t>(j)];
    mixed.push_back(f);
  }
  CHECK(matrix_rank(c, mixed, s1) == r);

  // Re-shear the chart and recompute everything.
  const PlaneCurve c2 = sheared(c, Fp(12345));
  CHECK(singularity_audit(c2).pass);
  const auto adj2 = adjoint_basis(c2);
  CHECK(matrix_rank(c2, adj2, sample_points(c2, 6 * g + 5, 12)) == r);

  // Symbolic oracle.
  CHECK(symbolic_wahl_rank(c, adj) == r);
  CHECK(5 * g - 5 - r >= 1);
}

TEST_CASE("report at genus 5") {
  WahlOptions opts;
  opts.seed = 4;
  const auto rep = gauss_wahl_corank(example_config(), 5, opts);
  CHECK(rep.exploratory);
  CHECK(rep.genus == 5);
  CHECK(rep.primary.prime == kMersenne61);
  REQUIRE(rep.second.has_value());
  CHECK(rep.second->prime == kSecondPrime);
  CHECK(rep.confirmed);
  CHECK(rep.primary.omega3 == 20);
  CHECK(rep.primary.rows == 10);
  CHECK(rep.primary.cols == 35);
  CHECK(rep.primary.corank == 20 - rep.primary.rank);
  CHECK(rep.primary.corank >= 1);
  CHECK(rep.primary.adjoint_dim == 5);
  CHECK(rep.primary.audit.pass);
  CHECK_THROWS_AS(gauss_wahl_corank(example_config(), 2, opts), Precondition);
}

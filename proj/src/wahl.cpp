#include "halphen/wahl.hpp"

#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halphen {

namespace {

using Pt = ProjPoint<Fp>;

Pt shear_point(const Pt& p, const Fp& lambda) { return {p[0] - lambda * p[1], p[1], p[2]}; }

// Taylor coefficients of f at p up to order `top`, grouped by order; entry
// [s][k] is the coefficient of u^(s-k) v^k in the chart of p.
std::vector<std::vector<Fp>> taylor(const PlaneForm<Fp>& f, const Pt& p, int top) {
  const int d = f.degree();
  std::vector<Index> cols(static_cast<std::size_t>(f.size()));
  for (Index k = 0; k < f.size(); ++k) cols[static_cast<std::size_t>(k)] = k;
  const Condition<Fp> c{p, top + 1};
  MatrixFp rows(Index(top + 1) * (top + 2) / 2, f.size());
  append_condition_rows(rows, 0, d, c, cols, detail::binomials<Fp>(d));
  Vector<Fp> v(f.size());
  for (Index k = 0; k < f.size(); ++k) v(k) = f[k];
  const Vector<Fp> vals = rows * v;
  std::vector<std::vector<Fp>> out(static_cast<std::size_t>(top) + 1);
  Index r = 0;
  for (int s = 0; s <= top; ++s)
    for (int k = 0; k <= s; ++k) out[static_cast<std::size_t>(s)].push_back(vals(r++));
  return out;
}

int valuation(const UniPoly<Fp>& f, const Fp& a, UniPoly<Fp>* rest) {
  auto [mult, q] = strip_root(f, a);
  *rest = std::move(q);
  return mult;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<PlaneForm<Fp>> partials(const PlaneForm<Fp>& f) { return {f.partial(0), f.partial(1), f.partial(2)}; }

}  // namespace

PlaneCurve sheared(const PlaneCurve& c, const Fp& lambda) {
  PlaneCurve out;
  out.form = c.form.shear(lambda);
  out.genus = c.genus;
  out.shear = c.shear + lambda;
  for (const auto& s : c.singular) out.singular.push_back({shear_point(s.point, lambda), s.mult});
  for (const auto& p : c.avoid) out.avoid.push_back(shear_point(p, lambda));
  return out;
}

PlaneCurve make_curve(const PlaneForm<Fp>& form, int genus, const std::vector<Condition<Fp>>& singular,
                      const std::vector<ProjPoint<Fp>>& avoid, const Fp& lambda) {
  PlaneCurve base;
  base.form = form;
  base.genus = genus;
  base.shear = Fp(0);
  for (const auto& s : singular) base.singular.push_back({normalized(s.point), s.mult});
  for (const auto& p : avoid) base.avoid.push_back(normalized(p));
  return sheared(base, lambda);
}

AuditReport singularity_audit(const PlaneCurve& curve) {
  AuditReport rep;
  const PlaneForm<Fp>& f = curve.form;
  const int d = f.degree();
  auto fail = [&](std::string why) { rep.failures.push_back(std::move(why)); };

  if (f.is_zero()) {
    fail("zero form");
    return rep;
  }
  if (!monic_in_y(f)) fail("curve passes through the vertical direction (0:1:0)");
  for (std::size_t i = 0; i < curve.singular.size(); ++i) {
    const Pt& p = curve.singular[i].point;
    if (p[2].is_zero()) fail("assigned point " + std::to_string(i + 1) + " is at infinity");
    for (std::size_t j = 0; j < i; ++j)
      if (p[0] == curve.singular[j].point[0])
        fail("assigned points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " share an x-coordinate");
  }
  if (!rep.failures.empty()) return rep;

  // (a) exact multiplicity, (b) ordinary tangent cone.
  for (std::size_t i = 0; i < curve.singular.size(); ++i) {
    const auto& [p, m] = curve.singular[i];
    const auto t = taylor(f, p, m);
    bool vanish = true;
    for (int s = 0; s < m; ++s)
      for (const Fp& c : t[static_cast<std::size_t>(s)]) vanish = vanish && c.is_zero();
    const auto& cone = t[static_cast<std::size_t>(m)];
    const bool exact = std::any_of(cone.begin(), cone.end(), [](const Fp& c) { return !c.is_zero(); });
    const std::string tag = "assigned point " + std::to_string(i + 1);
    if (!vanish) fail(tag + ": multiplicity below " + std::to_string(m));
    if (!exact) fail(tag + ": multiplicity above " + std::to_string(m));
    if (vanish && exact) {
      // cone[k] is the coefficient of u^(m-k) v^k; as a polynomial in u/v.
      std::vector<Fp> c(cone.rbegin(), cone.rend());
      const UniPoly<Fp> tc(c);
      if (tc.degree() < m - 1 || !is_squarefree(tc)) fail(tag + ": tangent cone is not reduced");
    }
  }
  if (!rep.failures.empty()) return rep;

  // (c) no further singular points in the chart.
  const PlaneForm<Fp> fy = f.partial(1);
  if (d >= 1) {
    UniPoly<Fp> r = resultant_y(f, fy);
    if (r.is_zero()) {
      fail("Res_y(F, F_y) vanishes identically (non-reduced curve)");
    } else {
      for (const auto& [p, m] : curve.singular) {
        UniPoly<Fp> rest;
        const int e = valuation(r, p[0] / p[2], &rest);
        rep.exponents.push_back(e);
        if (e != m * (m - 1))
          fail("resultant exponent " + std::to_string(e) + " at a point of multiplicity " + std::to_string(m) +
               ", expected " + std::to_string(m * (m - 1)));
        r = std::move(rest);
      }
      rep.residual_degree = r.degree();
      rep.residual_squarefree = is_squarefree(r);
      if (!rep.residual_squarefree) fail("residual resultant is not squarefree (unassigned singularity or tangency)");
    }
  }

  // Line at infinity.
  rep.infinity_smooth = d < 1 || !common_zero_at_infinity(partials(f));
  if (!rep.infinity_smooth) fail("singular point on the line at infinity");
  rep.pass = rep.failures.empty();
  return rep;
}

PlaneCurve pick_member(const std::vector<PlaneForm<Fp>>& basis, int genus,
                       const std::vector<Condition<Fp>>& singular, const std::vector<ProjPoint<Fp>>& avoid,
                       u64 seed, int retry_budget) {
  if (basis.empty()) throw Usage("empty linear system");
  Rng rng(seed, "member");
  std::string last;
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    PlaneForm<Fp> f(basis[0].degree());
    for (const auto& b : basis) f = f + rng.nonzero_residue() * b;
    const PlaneCurve c = make_curve(f, genus, singular, avoid, rng.residue());
    bool clash = false;
    for (const auto& a : c.avoid) {
      clash = clash || a[2].is_zero();
      for (const auto& s : c.singular) clash = clash || same_point(a, s.point);
    }
    if (clash) {
      last = "avoided point at infinity or on an assigned point";
      continue;
    }
    const AuditReport rep = singularity_audit(c);
    if (rep.pass) return c;
    last = rep.failures.front();
  }
  throw RetryExhausted("no audited member after " + std::to_string(retry_budget) + " draws; last failure: " + last);
}

PlaneCurve pick_duval_member(const PointConfig& config, int g, u64 seed, int retry_budget) {
  if (g < 2) throw Precondition("du Val curves need g >= 2");
  const auto pts = config.points_mod_active();
  const MultiplicitySpec spec = du_val_spec(pts, g);
  const auto sys = system_basis(spec);
  if (sys.dim() != g + 1)
    throw InconsistentGeometry("du Val system has affine dimension " + std::to_string(sys.dim()) + ", expected " +
                               std::to_string(g + 1));
  const Pt p10 = tenth_point(config, g);
  return pick_member(sys.basis, g, spec.conditions, {p10}, seed, retry_budget);
}

std::vector<PlaneForm<Fp>> adjoint_basis(const PlaneCurve& curve) {
  MultiplicitySpec spec;
  spec.degree = curve.form.degree() - 3;
  for (const auto& s : curve.singular)
    if (s.mult >= 2) spec.conditions.push_back({s.point, s.mult - 1});
  const auto sys = system_basis(spec);
  if (sys.dim() != curve.genus)
    throw InconsistentGeometry("adjoint system has dimension " + std::to_string(sys.dim()) + ", expected genus " +
                               std::to_string(curve.genus));
  return sys.basis;
}

int omega3_dim(const PlaneCurve& curve) {
  const int d = curve.form.degree();
  MultiplicitySpec triple, cofactor;
  triple.degree = 3 * d - 9;
  cofactor.degree = 2 * d - 9;
  for (const auto& s : curve.singular) {
    if (3 * (s.mult - 1) > 0) triple.conditions.push_back({s.point, 3 * (s.mult - 1)});
    if (2 * s.mult - 3 > 0) cofactor.conditions.push_back({s.point, 2 * s.mult - 3});
  }
  const Index a = triple.degree < 0 ? 0 : system_dimension(triple);
  const Index b = cofactor.degree < 0 ? 0 : system_dimension(cofactor);
  const int dim = static_cast<int>(a - b);
  if (dim != 5 * curve.genus - 5)
    throw InconsistentGeometry("dim H0(omega^3) measured as " + std::to_string(dim) + ", expected " +
                               std::to_string(5 * curve.genus - 5));
  return dim;
}

std::vector<CurveSample> sample_points(const PlaneCurve& curve, int n, u64 seed) {
  if (n < 6 * curve.genus - 5)
    throw Precondition("need at least 6g - 5 = " + std::to_string(6 * curve.genus - 5) + " samples, got " +
                       std::to_string(n));
  const PlaneForm<Fp> fy = curve.form.partial(1);
  Rng rng(seed, "samples");
  std::vector<CurveSample> out;
  std::vector<Pt> taken;
  for (const auto& s : curve.singular) taken.push_back(s.point);
  for (const auto& p : curve.avoid) taken.push_back(p);
  const long budget = 64L * n + 1000;
  for (long draw = 0; static_cast<int>(out.size()) < n && draw < budget; ++draw) {
    const Fp x0 = rng.residue();
    const UniPoly<Fp> slice = curve.form.restrict_x(x0);
    if (slice.degree() < 1) continue;
    for (const auto& r : roots_in_field(slice)) {
      if (static_cast<int>(out.size()) == n) break;
      const Pt p{x0, r.value, Fp(1)};
      if (fy(p).is_zero()) continue;
      if (std::any_of(taken.begin(), taken.end(), [&](const Pt& q) { return same_point(p, q); })) continue;
      taken.push_back(p);
      out.push_back({x0, r.value});
    }
  }
  if (static_cast<int>(out.size()) < n)
    throw BadPrime("GF(" + std::to_string(active_prime()) + ") supplied only " + std::to_string(out.size()) +
                   " of " + std::to_string(n) + " curve points");
  return out;
}

Fp wahl_entry(const PlaneCurve& curve, const PlaneForm<Fp>& a, const PlaneForm<Fp>& b, const CurveSample& s) {
  const Pt p{s.x, s.y, Fp(1)};
  const Fp fx = curve.form.partial(0)(p), fy = curve.form.partial(1)(p);
  const Fp slope = fx / fy;
  const Fp da = a.partial(0)(p) - slope * a.partial(1)(p);
  const Fp db = b.partial(0)(p) - slope * b.partial(1)(p);
  return (a(p) * db - b(p) * da) / (fy * fy);
}

MatrixFp wahl_matrix(const PlaneCurve& curve, const std::vector<PlaneForm<Fp>>& adjoints,
                     const std::vector<CurveSample>& samples) {
  const Index g = static_cast<Index>(adjoints.size());
  const Index n = static_cast<Index>(samples.size());
  MatrixFp m(g * (g - 1) / 2, n);
  const PlaneForm<Fp> fx = curve.form.partial(0), fy = curve.form.partial(1);
  std::vector<PlaneForm<Fp>> ax, ay;
  for (const auto& a : adjoints) {
    ax.push_back(a.partial(0));
    ay.push_back(a.partial(1));
  }
  const u64 prime = active_prime();
#pragma omp parallel
  {
    PrimeScope scope(prime);
#pragma omp for schedule(static)
    for (Index k = 0; k < n; ++k) {
      const Pt p{samples[static_cast<std::size_t>(k)].x, samples[static_cast<std::size_t>(k)].y, Fp(1)};
      const Fp vy = fy(p);
      const Fp slope = fx(p) / vy;
      const Fp w = (vy * vy).inverse();
      std::vector<Fp> val(static_cast<std::size_t>(g)), der(static_cast<std::size_t>(g));
      for (Index i = 0; i < g; ++i) {
        val[i] = adjoints[i](p);
        der[i] = ax[i](p) - slope * ay[i](p);
      }
      Index row = 0;
      for (Index i = 0; i < g; ++i)
        for (Index j = i + 1; j < g; ++j) m(row++, k) = (val[i] * der[j] - val[j] * der[i]) * w;
    }
  }
  return m;
}

Index symbolic_wahl_rank(const PlaneCurve& curve, const std::vector<PlaneForm<Fp>>& adjoints) {
  const PlaneForm<Fp>& f = curve.form;
  const int d = f.degree();
  const int top = 3 * d - 8;
  const PlaneForm<Fp> fx = f.partial(0), fy = f.partial(1);
  auto lift = [&](const PlaneForm<Fp>& h) {
    // Multiply by z^(top - deg h) to land in degree `top`.
    PlaneForm<Fp> zp(top - h.degree());
    zp.coeff(0, 0) = Fp(1);
    return h * zp;
  };
  std::vector<PlaneForm<Fp>> ws;
  for (std::size_t i = 0; i < adjoints.size(); ++i)
    for (std::size_t j = i + 1; j < adjoints.size(); ++j) {
      const auto& a = adjoints[i];
      const auto& b = adjoints[j];
      const PlaneForm<Fp> w = a * (fy * b.partial(0) - fx * b.partial(1)) - b * (fy * a.partial(0) - fx * a.partial(1));
      ws.push_back(lift(w));
    }
  std::vector<PlaneForm<Fp>> ideal;
  for (int i = 0; i <= 2 * d - 8; ++i)
    for (int j = 0; i + j <= 2 * d - 8; ++j) {
      PlaneForm<Fp> mono(2 * d - 8);
      mono.coeff(i, j) = Fp(1);
      ideal.push_back(f * mono);
    }
  const Index cols = num_monomials(top);
  MatrixFp all(static_cast<Index>(ws.size() + ideal.size()), cols), only(static_cast<Index>(ideal.size()), cols);
  Index r = 0;
  for (const auto& w : ws) {
    for (Index k = 0; k < cols; ++k) all(r, k) = w[k];
    ++r;
  }
  for (std::size_t q = 0; q < ideal.size(); ++q, ++r)
    for (Index k = 0; k < cols; ++k) all(r, k) = only(static_cast<Index>(q), k) = ideal[q][k];
  return rank(all) - rank(only);
}

void set_thread_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

WahlRun wahl_run(const PointConfig& config, int g, u64 seed, int samples, bool check_omega3, bool keep_matrix) {
  using clock = std::chrono::steady_clock;
  WahlRun run;
  run.prime = active_prime();
  auto t0 = clock::now();
  const PlaneCurve curve = pick_duval_member(config, g, seed);
  run.timings["member"] = seconds_since(t0);

  t0 = clock::now();
  run.audit = singularity_audit(curve);
  run.timings["audit"] = seconds_since(t0);

  t0 = clock::now();
  const auto adj = adjoint_basis(curve);
  run.adjoint_dim = static_cast<int>(adj.size());
  run.timings["adjoints"] = seconds_since(t0);

  if (check_omega3) {
    t0 = clock::now();
    run.omega3 = omega3_dim(curve);
    run.timings["omega3"] = seconds_since(t0);
  }

  t0 = clock::now();
  run.samples = samples > 0 ? samples : 6 * g + 5;
  const auto pts = sample_points(curve, run.samples, seed);
  run.timings["samples"] = seconds_since(t0);

  t0 = clock::now();
  MatrixFp m = wahl_matrix(curve, adj, pts);
  run.timings["matrix"] = seconds_since(t0);

  t0 = clock::now();
  run.rows = m.rows();
  run.cols = m.cols();
  run.rank = rank(m);
  run.corank = static_cast<int>(5 * g - 5 - run.rank);
  run.timings["rank"] = seconds_since(t0);
  if (run.corank < 0) throw InconsistentGeometry("negative corank");
  if (keep_matrix) run.matrix = std::move(m);
  return run;
}

WahlReport gauss_wahl_corank(const PointConfig& config, int g, const WahlOptions& opts) {
  if (g < 3) throw Precondition("the Gauss-Wahl pipeline needs g >= 3");
  WahlReport rep;
  rep.genus = g;
  rep.seed = opts.seed;
  rep.provenance = config.provenance;
  rep.exploratory = g % 2 == 0 || g <= 11;
  rep.note =
      "rank mod p <= rank in characteristic 0, so the measured corank bounds the characteristic-0 corank from "
      "above; the du Val curve lies on a surface forcing corank >= 1, hence a measured corank of 1 is exact.";
  if (rep.exploratory) rep.note += " Genus " + std::to_string(g) + " is exploratory: no expected corank.";
  {
    PrimeScope scope(opts.prime);
    rep.primary = wahl_run(config_for_prime(config, opts.prime), g, opts.seed, opts.samples, opts.check_omega3,
                           opts.keep_matrix);
  }
  if (opts.second_prime != 0) {
    PrimeScope scope(opts.second_prime);
    rep.second = wahl_run(config_for_prime(config, opts.second_prime), g, opts.seed, opts.samples,
                          opts.check_omega3, false);
    rep.confirmed = rep.second->rank == rep.primary.rank;
  }
  return rep;
}

}  // namespace halphen

#include "halphen/cubic.hpp"

namespace halphen {

namespace {

Rational ratio(long num, long den = 1) { return Rational(num, den); }

// Context for repeated chord reductions on one configuration.
struct CubicContext {
  std::vector<ProjPoint<Fp>> pts;
  PlaneForm<Fp> cubic;
};

CubicContext make_context(const PointConfig& config) {
  CubicContext ctx;
  ctx.pts = config.points_mod_active();
  const std::vector<PlaneForm<Fp>> basis = cubics_through(ctx.pts);
  if (basis.size() == 1) {
    if (!is_nonsingular(basis[0])) throw DegenerateConfig("the cubic through the nine points is singular");
    ctx.cubic = basis[0];
    return ctx;
  }
  if (basis.size() == 2) {
    for (int t = 0; t < 16; ++t) {
      PlaneForm<Fp> member = basis[0] + Fp(t) * basis[1];
      if (is_nonsingular(member)) {
        ctx.cubic = std::move(member);
        return ctx;
      }
    }
    throw DegenerateConfig("no smooth member found in the pencil through the nine points");
  }
  throw DegenerateConfig("the nine points lie on " + std::to_string(basis.size()) + " independent cubics");
}

// T(g) = reduce(e + [T(g-1)]).
ProjPoint<Fp> step_tenth(const CubicContext& ctx, const ProjPoint<Fp>& prev) {
  FormalSum<Fp> fs;
  fs.lines = 3;
  for (const auto& p : ctx.pts) fs.terms.emplace_back(p, -1);
  fs.terms.emplace_back(prev, 1);
  return reduce_class(ctx.cubic, fs);
}

}  // namespace

void PointConfig::validate() const {
  if (points.size() != 9) throw Usage("a point configuration has nine points, got " + std::to_string(points.size()));
  if (field == FieldKind::Prime) {
    if (!is_prime_u64(p)) throw Usage("configuration modulus " + std::to_string(p) + " is not prime");
    for (const auto& pt : points)
      for (const Rational& c : pt)
        if (boost::multiprecision::denominator(c) != 1 || c < 0 || c >= Rational(Integer(p)))
          throw Usage("prime-field coordinates must be reduced residues");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (points[i] == points[j])
        throw Usage("points p" + std::to_string(j + 1) + " and p" + std::to_string(i + 1) + " coincide");
}

std::vector<ProjPoint<Fp>> PointConfig::points_mod_active() const {
  validate();
  const u64 q = active_prime();
  if (field == FieldKind::Prime && q != p) {
    throw Usage("configuration is over GF(" + std::to_string(p) + ") but GF(" + std::to_string(q) + ") is active");
  }
  std::vector<ProjPoint<Fp>> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::array<u64, 2> r;
    try {
      r = reduce_rational_point(points[i], q);
    } catch (const BadPrime& e) {
      throw BadPrime("p" + std::to_string(i + 1) + ": " + e.what());
    }
    out.push_back({Fp::from_raw(r[0]), Fp::from_raw(r[1]), Fp::from_raw(1)});
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (same_point(out[i], out[j]))
        throw BadPrime("p" + std::to_string(j + 1) + " and p" + std::to_string(i + 1) + " collide modulo " +
                       std::to_string(q));
  return out;
}

std::vector<ProjPoint<Rational>> PointConfig::points_rational() const {
  validate();
  if (field != FieldKind::Rational) throw Usage("configuration is over a prime field");
  std::vector<ProjPoint<Rational>> out;
  for (const auto& pt : points) out.push_back({pt[0], pt[1], Rational(1)});
  return out;
}

PointConfig example_config() {
  PointConfig c;
  c.field = FieldKind::Rational;
  c.points = {{ratio(-2), ratio(3)},    {ratio(-1), ratio(-4)},     {ratio(2), ratio(5)},
              {ratio(4), ratio(9)},     {ratio(52), ratio(375)},    {ratio(5234), ratio(37866)},
              {ratio(8), ratio(-23)},   {ratio(43), ratio(282)},    {ratio(1, 4), ratio(-33, 8)}};
  return c;
}

CubicModel<Fp> cubic_through_nine(const PointConfig& config) { return cubic_through(config.points_mod_active()); }

std::vector<ProjPoint<Fp>> tenth_points(const PointConfig& config, int g_max) {
  const CubicContext ctx = make_context(config);
  std::vector<ProjPoint<Fp>> out;
  ProjPoint<Fp> t = ctx.pts[8];
  for (int g = 1; g <= g_max; ++g) {
    t = step_tenth(ctx, t);
    out.push_back(t);
  }
  return out;
}

ProjPoint<Fp> tenth_point(const PointConfig& config, int g) {
  if (g < 0) throw Usage("tenth point needs g >= 0");
  if (g == 0) return config.points_mod_active()[8];
  return tenth_points(config, g).back();
}

std::optional<int> halphen_index(const PointConfig& config, int max_m) {
  const CubicContext ctx = make_context(config);
  ProjPoint<Fp> t = ctx.pts[8];
  for (int h = 1; h <= max_m; ++h) {
    t = step_tenth(ctx, t);
    if (same_point(t, ctx.pts[8])) return h;
  }
  return std::nullopt;
}

ProjPoint<Fp> flex_origin() { return {Fp(0), Fp(1), Fp(0)}; }

TorsionModel torsion_model(int m, Fp param) {
  PlaneForm<Fp> f(3);
  TorsionModel tm;
  tm.torsion = {Fp(0), Fp(0), Fp(1)};
  if (m == 2) {
    f.coeff(0, 2) = Fp(1);   // y^2 z
    f.coeff(3, 0) = Fp(-1);  // x^3
    f.coeff(2, 0) = Fp(-1);  // x^2 z
    f.coeff(1, 0) = -param;  // x z^2
    tm.family = "y^2 = x^3 + x^2 + v x";
  } else if (m == 3) {
    f.coeff(0, 2) = Fp(1);
    f.coeff(1, 1) = Fp(1);  // xyz
    f.coeff(0, 1) = param;  // y z^2
    f.coeff(3, 0) = Fp(-1);
    tm.family = "y^2 + xy + v y = x^3";
  } else {
    Fp b, c;
    const Fp t = param;
    switch (m) {
      case 4: b = t; c = Fp(0); break;
      case 5: b = t; c = t; break;
      case 6: b = t + t * t; c = t; break;
      case 7: b = t * t * t - t * t; c = t * t - t; break;
      case 8: b = (Fp(2) * t - Fp(1)) * (t - Fp(1)); c = b / t; break;
      case 9: c = t * t * (t - Fp(1)); b = c * (t * t - t + Fp(1)); break;
      default: throw Unsupported("no torsion parametrization for order " + std::to_string(m));
    }
    f.coeff(0, 2) = Fp(1);
    f.coeff(1, 1) = Fp(1) - c;
    f.coeff(0, 1) = -b;
    f.coeff(3, 0) = Fp(-1);
    f.coeff(2, 0) = b;
    tm.family = "tate(" + std::to_string(m) + ")";
  }
  tm.cubic = std::move(f);
  return tm;
}

ProjPoint<Fp> group_add(const PlaneForm<Fp>& cubic, const ProjPoint<Fp>& p, const ProjPoint<Fp>& q) {
  return third_intersection(cubic, third_intersection(cubic, p, q), flex_origin());
}

ProjPoint<Fp> group_neg(const PlaneForm<Fp>& cubic, const ProjPoint<Fp>& p) {
  return third_intersection(cubic, p, flex_origin());
}

int point_order(const PlaneForm<Fp>& cubic, const ProjPoint<Fp>& p, int max_k) {
  ProjPoint<Fp> acc = normalized(p);
  for (int k = 1; k <= max_k; ++k) {
    if (same_point(acc, flex_origin())) return k;
    acc = group_add(cubic, acc, p);
  }
  return 0;
}

PointConfig gen_halphen_config(int m, u64 seed, int retry_budget) {
  if (m < 2) throw Usage("Halphen index must be at least 2");
  Rng rng(seed, "halphen-config");
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    const Fp param = rng.nonzero_residue();
    const TorsionModel tm = torsion_model(m, param);
    if (!is_nonsingular(tm.cubic)) continue;
    if (point_order(tm.cubic, tm.torsion, m) != m) continue;

    std::vector<ProjPoint<Fp>> pts;
    for (int tries = 0; pts.size() < 8 && tries < 1000; ++tries) {
      const Fp x = rng.residue();
      const auto roots = roots_in_field(tm.cubic.restrict_x(x));
      if (roots.empty()) continue;
      const ProjPoint<Fp> cand{x, roots[rng.below(roots.size())].value, Fp(1)};
      if (std::any_of(pts.begin(), pts.end(), [&](const auto& q) { return same_point(q, cand); })) continue;
      pts.push_back(cand);
    }
    if (pts.size() < 8) throw BadPrime("field too small to sample eight points");

    ProjPoint<Fp> sum = tm.torsion;
    for (const auto& q : pts) sum = group_add(tm.cubic, sum, q);
    const ProjPoint<Fp> p9 = group_neg(tm.cubic, sum);
    if (is_zero(p9[2])) continue;
    if (std::any_of(pts.begin(), pts.end(), [&](const auto& q) { return same_point(q, p9); })) continue;
    pts.push_back(p9);

    PointConfig cfg;
    cfg.field = FieldKind::Prime;
    cfg.p = active_prime();
    for (const auto& q : pts) {
      cfg.points.push_back({Rational(Integer(q[0].value())), Rational(Integer(q[1].value()))});
    }
    cfg.provenance = {"generated", m, seed, tm.family, std::to_string(param.value())};

    try {
      if (halphen_index(cfg, m) != m) continue;
      const auto tens = tenth_points(cfg, m - 1);
      bool ok = true;
      for (const auto& t : tens) {
        ok = ok && !is_zero(t[2]);
        for (const auto& q : pts) ok = ok && !same_point(t, q);
      }
      for (std::size_t i = 0; i < tens.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) ok = ok && !same_point(tens[i], tens[j]);
      if (!ok) continue;
    } catch (const DegenerateConfig&) {
      continue;
    }
    return cfg;
  }
  throw RetryExhausted("no index-" + std::to_string(m) + " configuration after " + std::to_string(retry_budget) +
                       " attempts");
}

PointConfig config_for_prime(const PointConfig& config, u64 p) {
  if (config.field == FieldKind::Rational || config.p == p) return config;
  if (config.provenance.kind != "generated")
    throw Usage("configuration over GF(" + std::to_string(config.p) + ") cannot be moved to GF(" +
                std::to_string(p) + ")");
  PrimeScope scope(p);
  return gen_halphen_config(config.provenance.order, config.provenance.seed);
}

}  // namespace halphen

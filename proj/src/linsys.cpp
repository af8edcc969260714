#include "halphen/linsys.hpp"

#include <numeric>

#include "halphen/cache.hpp"

namespace halphen {

namespace {

using Mat3 = std::array<std::array<Fp, 3>, 3>;

Fp det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Inverse of the matrix whose columns are a, b, c.
std::optional<Mat3> inverse_of_columns(const ProjPoint<Fp>& a, const ProjPoint<Fp>& b, const ProjPoint<Fp>& c) {
  Mat3 m;
  for (int r = 0; r < 3; ++r) m[r] = {a[r], b[r], c[r]};
  const Fp det = det3(m);
  if (det.is_zero()) return std::nullopt;
  const Fp inv = det.inverse();
  Mat3 out;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) {
      // adjugate: out[r][k] = cofactor(k, r)
      const int r1 = (k + 1) % 3, r2 = (k + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      out[r][k] = (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) * inv;
    }
  return out;
}

ProjPoint<Fp> transform_point(const Mat3& m, const ProjPoint<Fp>& p) {
  return {m[0][0] * p[0] + m[0][1] * p[1] + m[0][2] * p[2], m[1][0] * p[0] + m[1][1] * p[1] + m[1][2] * p[2],
          m[2][0] * p[0] + m[2][1] * p[1] + m[2][2] * p[2]};
}

Index dimension_by_full_matrix(const MultiplicitySpec& spec) {
  return spec.cols() - rank(condition_matrix(spec));
}

Index dimension_uncached(const MultiplicitySpec& spec) {
  std::vector<Condition<Fp>> conds;
  for (const auto& c : spec.conditions)
    if (c.mult > 0) conds.push_back(c);
  std::vector<std::size_t> order(conds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return conds[a].mult > conds[b].mult; });

  // First non-collinear triple in multiplicity order.
  std::optional<Mat3> minv;
  std::array<std::size_t, 3> tri{};
  for (std::size_t a = 0; a < order.size() && !minv; ++a)
    for (std::size_t b = a + 1; b < order.size() && !minv; ++b)
      for (std::size_t c = b + 1; c < order.size() && !minv; ++c) {
        minv = inverse_of_columns(conds[order[a]].point, conds[order[b]].point, conds[order[c]].point);
        tri = {order[a], order[b], order[c]};
      }
  if (!minv) return dimension_by_full_matrix(spec);

  const int d = spec.degree;
  const int m0 = conds[tri[0]].mult, m1 = conds[tri[1]].mult, m2 = conds[tri[2]].mult;
  std::vector<Index> kept;
  for (Index k = 0; k < spec.cols(); ++k) {
    const auto [i, j, l] = monomial_exponents(d, k);
    if (j + l < m0 || i + l < m1 || i + j < m2) continue;
    kept.push_back(k);
  }
  std::vector<Condition<Fp>> rest;
  for (std::size_t k = 0; k < conds.size(); ++k)
    if (k != tri[0] && k != tri[1] && k != tri[2]) rest.push_back({transform_point(*minv, conds[k].point), conds[k].mult});
  if (kept.empty()) return 0;
  Index rows = 0;
  for (const auto& c : rest) rows += Index(c.mult) * (c.mult + 1) / 2;
  MatrixFp m(rows, static_cast<Index>(kept.size()));
  const auto binom = detail::binomials<Fp>(d);
  Index r = 0;
  for (const auto& c : rest) {
    append_condition_rows(m, r, d, c, kept, binom);
    r += Index(c.mult) * (c.mult + 1) / 2;
  }
  return static_cast<Index>(kept.size()) - rank(m);
}

nlohmann::json spec_key(const MultiplicitySpec& spec) {
  nlohmann::json conds = nlohmann::json::array();
  for (const auto& c : spec.conditions) {
    const auto p = normalized(c.point);
    conds.push_back({std::to_string(p[0].value()), std::to_string(p[1].value()), std::to_string(p[2].value()), c.mult});
  }
  return {{"op", "system_dimension"}, {"prime", std::to_string(active_prime())}, {"degree", spec.degree},
          {"conditions", conds}};
}

}  // namespace

Index system_dimension(const MultiplicitySpec& spec) {
  if (spec.degree < 0) return 0;
  detail::require_distinct(spec);
  Cache* cache = active_cache();
  if (!cache) return dimension_uncached(spec);
  const nlohmann::json key = spec_key(spec);
  if (auto hit = cache->get(key)) return hit->get<Index>();
  const Index dim = dimension_uncached(spec);
  cache->put(key, dim);
  return dim;
}

MultiplicitySpec du_val_spec(const std::vector<ProjPoint<Fp>>& pts, int g) {
  if (pts.size() < 9) throw Usage("du Val spec needs nine points");
  if (g < 1) throw Usage("du Val spec needs g >= 1");
  MultiplicitySpec spec;
  spec.degree = 3 * g;
  for (int i = 0; i < 9; ++i) spec.conditions.push_back({pts[i], i < 8 ? g : g - 1});
  return spec;
}

HalphenSurface::HalphenSurface(const PointConfig& config, int g) : config_(config), g_(g) {
  pts_ = config.points_mod_active();
  if (g > 0) {
    const ProjPoint<Fp> p10 = tenth_point(config, g);
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (same_point(pts_[i], p10))
        throw DegenerateConfig("p10(" + std::to_string(g) + ") coincides with p" + std::to_string(i + 1));
    pts_.push_back(p10);
  }
}

std::optional<MultiplicitySpec> HalphenSurface::spec_for(const DivisorClass& d) const {
  if (d.d < 0) return std::nullopt;
  MultiplicitySpec spec;
  spec.degree = d.d;
  for (int i = 0; i < d.n_points; ++i) {
    if (d.m[i] <= 0) continue;
    if (i >= static_cast<int>(pts_.size())) throw Usage("class has a condition at p10 but no genus fixes p10");
    spec.conditions.push_back({pts_[i], d.m[i]});
  }
  return spec;
}

int HalphenSurface::h0(const DivisorClass& d) const {
  const auto spec = spec_for(d);
  return spec ? static_cast<int>(system_dimension(*spec)) : 0;
}

int HalphenSurface::h2(const DivisorClass& d) const { return h0(serre_dual(d)); }

int HalphenSurface::h1(const DivisorClass& d) const { return cohomology(d).h1; }

Cohomology HalphenSurface::cohomology(const DivisorClass& d) const {
  Cohomology c;
  c.h0 = h0(d);
  c.h2 = h2(d);
  c.h1 = c.h0 + c.h2 - euler_char(d);
  if (c.h1 < 0) {
    throw InconsistentGeometry("h1 of " + to_string(d) + " would be " + std::to_string(c.h1) +
                               " (h0 = " + std::to_string(c.h0) + ", h2 = " + std::to_string(c.h2) +
                               ", chi = " + std::to_string(euler_char(d)) + ")");
  }
  return c;
}

int h0(const DivisorClass& d, const PointConfig& config, int g) { return HalphenSurface(config, g).h0(d); }
int h1(const DivisorClass& d, const PointConfig& config, int g) { return HalphenSurface(config, g).h1(d); }
int h2(const DivisorClass& d, const PointConfig& config, int g) { return HalphenSurface(config, g).h2(d); }

GeneralityResult is_k_halphen_general(const PointConfig& config, int k) {
  GeneralityResult res;
  if (k < 1) return res;
  const auto pts = config.points_mod_active();
  for (int h = 1; h <= k; ++h) {
    MultiplicitySpec spec;
    spec.degree = 3 * h;
    for (const auto& p : pts) spec.conditions.push_back({p, h});
    const Index dim = system_dimension(spec);
    res.dims.push_back(dim);
    if (dim > 1 && res.general) {
      res.general = false;
      res.witness = h;
    }
  }
  res.index = halphen_index(config, k);
  for (int h = 1; h <= k; ++h) {
    const Index expected = 1 + (res.index ? h / *res.index : 0);
    res.agrees = res.agrees && res.dims[h - 1] == expected;
  }
  return res;
}

namespace {

void enumerate_nodal(int d, int pos, int sum_left, int sq_left, std::array<int, 9>& m,
                     std::vector<std::array<int, 9>>& out) {
  const int n = 9 - pos;
  if (n == 0) {
    if (sum_left == 0 && sq_left == 0) out.push_back(m);
    return;
  }
  if (sum_left < 0 || sum_left > n * d) return;
  if (sq_left * n < sum_left * sum_left) return;  // Cauchy-Schwarz
  if (sq_left > sum_left * d) return;              // v^2 <= d v
  for (int v = 0; v <= d && v * v <= sq_left && v <= sum_left; ++v) {
    m[pos] = v;
    enumerate_nodal(d, pos + 1, sum_left - v, sq_left - v * v, m, out);
  }
}

}  // namespace

std::vector<DivisorClass> nodal_class_scan(const PointConfig& config, int degree_bound) {
  std::vector<DivisorClass> found;
  if (degree_bound < 1) return found;
  const auto pts = config.points_mod_active();
  for (int d = 1; d <= degree_bound; ++d) {
    std::vector<std::array<int, 9>> cands;
    std::array<int, 9> m{};
    enumerate_nodal(d, 0, 3 * d, d * d + 2, m, cands);
    for (const auto& c : cands) {
      MultiplicitySpec spec;
      spec.degree = d;
      for (int i = 0; i < 9; ++i)
        if (c[i] > 0) spec.conditions.push_back({pts[i], c[i]});
      if (system_dimension(spec) > 0) {
        DivisorClass dc{d, {}, 9};
        std::copy(c.begin(), c.end(), dc.m.begin());
        found.push_back(dc);
      }
    }
  }
  return found;
}

namespace {

void require_index(int s, const PointConfig& config) {
  if (s < 1) throw Usage("proposition checks need s >= 1");
  const auto idx = halphen_index(config, s + 1);
  if (idx != s + 1) {
    throw Precondition("configuration has Halphen index " + (idx ? std::to_string(*idx) : "> " + std::to_string(s + 1)) +
                       ", expected " + std::to_string(s + 1));
  }
}

PropRow make_row(const HalphenSurface& surf, const std::string& name, const DivisorClass& d, Cohomology expected) {
  PropRow r{name, expected, surf.cohomology(d), false};
  r.pass = r.computed == r.expected;
  return r;
}

}  // namespace

std::vector<PropRow> verify_prop_calcoli(int s, const PointConfig& config) {
  require_index(s, config);
  const HalphenSurface surf(config, 2 * s + 1);
  const DivisorClass a = a_class(s), b = b_class(s), j = j_class();
  return {make_row(surf, "B", b, {2, 1, 0}), make_row(surf, "2B", 2 * b, {3, 2, 0}),
          make_row(surf, "2B-J", 2 * b - j, {2, 1, 0}), make_row(surf, "A-B", a - b, {0, 1, 0}),
          make_row(surf, "B-A", b - a, {0, 1, 0})};
}

BasePointCheck find_base_points(const std::vector<PlaneForm<Fp>>& basis, const std::vector<Condition<Fp>>& assigned,
                                u64 seed, int trials) {
  BasePointCheck res;
  if (basis.empty()) {
    res.base_point_found = true;
    res.detail = "empty system";
    return res;
  }
  for (const auto& c : assigned)
    if (c.point[2].is_zero()) throw DegenerateConfig("assigned point at infinity");
  if (common_zero_at_infinity(basis)) {
    res.base_point_found = true;
    res.detail = "common zero on the line at infinity";
    return res;
  }
  if (basis.size() == 1) {
    res.base_point_found = true;
    res.detail = "a single member has a whole curve of base points";
    return res;
  }
  Rng rng(seed, "base-points");
  int done = 0;
  for (int attempt = 0; done < trials && attempt < 4 * trials; ++attempt) {
    const Fp lambda = rng.residue();
    // x' = x - lambda y, so that forms become f(x' + lambda y, y).
    std::vector<Fp> xs;
    for (const auto& c : assigned) {
      const auto p = normalized(c.point);
      xs.push_back(p[0] - lambda * p[1]);
    }
    bool distinct = true;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) distinct = distinct && !(xs[i] == xs[j]);
    if (!distinct) continue;
    auto member = [&] {
      PlaneForm<Fp> f(basis.front().degree());
      for (const auto& b : basis) f = f + rng.residue() * b;
      return f.shear(lambda);
    };
    const PlaneForm<Fp> m1 = member(), m2 = member(), m3 = member();
    if (!monic_in_y(m1) || !monic_in_y(m2) || !monic_in_y(m3)) continue;
    UniPoly<Fp> r2 = resultant_y(m1, m2), r3 = resultant_y(m1, m3);
    if (r2.is_zero() || r3.is_zero()) {
      res.base_point_found = true;
      res.detail = "two general members share a component";
      return res;
    }
    std::vector<int> exps;
    for (std::size_t i = 0; i < assigned.size(); ++i) {
      auto [e2, q2] = strip_root(r2, xs[i]);
      auto [e3, q3] = strip_root(r3, xs[i]);
      r2 = std::move(q2);
      r3 = std::move(q3);
      exps.push_back(std::min(e2, e3));
      const int m = assigned[i].mult;
      if (std::min(e2, e3) > m * m) {
        res.base_point_found = true;
        res.detail = "extra intersection at assigned point " + std::to_string(i + 1);
      }
    }
    res.local_exponents = exps;
    const UniPoly<Fp> g = gcd(r2, r3);
    if (g.degree() > 0) {
      res.base_point_found = true;
      res.detail = "common resultant factor of degree " + std::to_string(g.degree());
    }
    if (res.base_point_found) return res;
    ++done;
  }
  if (done == 0) throw RetryExhausted("no usable coordinate change for the base-point search");
  res.detail = "no unassigned base point found (probabilistic, " + std::to_string(done) + " trials)";
  return res;
}

PropAResult verify_prop_A(int s, const PointConfig& config) {
  require_index(s, config);
  const HalphenSurface surf(config, 2 * s + 1);
  const DivisorClass a = a_class(s), j = j_class();
  PropAResult res;
  res.rows = {make_row(surf, "A", a, {s + 1, 1, 0}), make_row(surf, "A-J", a - j, {s, 0, 0}),
              make_row(surf, "2A", 2 * a, {4 * s - 2, 1, 0})};
  const MultiplicitySpec spec = *surf.spec_for(a);
  const LinearSystemBasis<Fp> sys = system_basis(spec);
  res.base_points = find_base_points(sys.basis, spec.conditions, config.provenance.seed);

  const std::size_t n = sys.basis.size();
  MatrixFp prods(static_cast<Index>(n * (n + 1) / 2), num_monomials(2 * spec.degree));
  Index r = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k, ++r) {
      const PlaneForm<Fp> q = sys.basis[i] * sys.basis[k];
      for (Index c = 0; c < q.size(); ++c) prods(r, c) = q[c];
    }
  res.quadrics_expected = (s + 1) * (s + 2) / 2 - (4 * s - 2);
  res.quadrics_computed = static_cast<int>(prods.rows() - rank(prods));
  res.pass = std::all_of(res.rows.begin(), res.rows.end(), [](const PropRow& row) { return row.pass; }) &&
             !res.base_points.base_point_found && res.quadrics_computed == res.quadrics_expected;
  return res;
}

}  // namespace halphen

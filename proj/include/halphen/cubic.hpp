#pragma once

// Plane cubics through nine points: the unique cubic, chord-tangent
// reduction of degree-one classes, Halphen index, the tenth base point, and
// generation of configurations of prescribed index.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halphen/planeform.hpp"
#include "halphen/random.hpp"
#include "halphen/rational.hpp"

namespace halphen {

enum class FieldKind { Rational, Prime };

struct Provenance {
  std::string kind = "explicit";  // "explicit" | "generated"
  int order = 0;
  u64 seed = 0;
  std::string model;   // torsion family used by the generator
  std::string param;   // decimal residue of the family parameter
};

/// Nine labelled affine points with exact coordinates. Points over GF(p)
/// are stored as integer residues.
struct PointConfig {
  FieldKind field = FieldKind::Rational;
  u64 p = 0;
  std::vector<std::array<Rational, 2>> points;
  Provenance provenance;

  /// Nine pairwise distinct points, residues reduced for prime fields.
  void validate() const;
  /// Points as projective points of the active prime field. A prime-field
  /// config requires its own prime to be active (Usage otherwise);
  /// rational configs reduce coordinate-wise (BadPrime on bad denominators).
  std::vector<ProjPoint<Fp>> points_mod_active() const;
  /// Exact rational points; Usage for prime-field configs.
  std::vector<ProjPoint<Rational>> points_rational() const;
};

/// The shipped example configuration (integral and one rational point).
PointConfig example_config();

/// Random element of T: a uniform residue for Fp, a small integer for Rational.
template <class T>
T random_scalar(Rng& rng);
template <>
inline Fp random_scalar<Fp>(Rng& rng) {
  return rng.residue();
}
template <>
inline Rational random_scalar<Rational>(Rng& rng) {
  return Rational(rng.between(-60, 60));
}

/// F(M v): substitutes the linear forms given by the rows of M.
template <class T>
PlaneForm<T> linear_substitute(const PlaneForm<T>& f, const std::array<std::array<T, 3>, 3>& m) {
  const int d = f.degree();
  std::array<std::vector<PlaneForm<T>>, 3> pw;
  for (int k = 0; k < 3; ++k) {
    PlaneForm<T> lin(1);
    lin.coeff(1, 0) = m[k][0];
    lin.coeff(0, 1) = m[k][1];
    lin.coeff(0, 0) = m[k][2];
    PlaneForm<T> one(0);
    one.coeff(0, 0) = T(1);
    pw[k].push_back(one);
    for (int e = 1; e <= d; ++e) pw[k].push_back(pw[k].back() * lin);
  }
  PlaneForm<T> r(d);
  for (int i = 0; i <= d; ++i)
    for (int j = 0; i + j <= d; ++j) {
      const T& c = f.coeff(i, j);
      if (is_zero(c)) continue;
      r = r + c * (pw[0][i] * pw[1][j] * pw[2][d - i - j]);
    }
  return r;
}

/// Exact nonsingularity test for a plane curve F = 0 over the algebraic
/// closure. A `true` answer is a certificate (no common zero of the
/// partials on the line at infinity, and coprime resultants in the chart
/// after a random change of coordinates). A `false` answer survives three
/// independent coordinate changes, so it is wrong only with negligible
/// probability.
template <class T>
bool is_nonsingular(const PlaneForm<T>& f, u64 seed = 0) {
  Rng rng(seed, "nonsingular");
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::array<std::array<T, 3>, 3> m;
    for (auto& row : m)
      for (auto& c : row) c = random_scalar<T>(rng);
    const T det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (is_zero(det)) continue;
    const PlaneForm<T> g = linear_substitute(f, m);
    const std::vector<PlaneForm<T>> parts{g.partial(0), g.partial(1), g.partial(2)};
    if (common_zero_at_infinity(parts)) continue;
    if (!std::all_of(parts.begin(), parts.end(), [](const auto& q) { return monic_in_y(q); })) continue;
    const UniPoly<T> h = gcd(resultant_y(parts[0], parts[1]), resultant_y(parts[0], parts[2]));
    if (h.degree() == 0) return true;
  }
  return false;
}

template <class T>
struct CubicModel {
  PlaneForm<T> cubic;
  bool smooth = false;
};

/// Basis of the cubics through the given points (one form per kernel row).
template <class T>
std::vector<PlaneForm<T>> cubics_through(const std::vector<ProjPoint<T>>& pts) {
  Matrix<T> ev(static_cast<Index>(pts.size()), 10);
  for (Index r = 0; r < ev.rows(); ++r) {
    const auto& p = pts[static_cast<std::size_t>(r)];
    for (Index k = 0; k < 10; ++k) {
      const auto [i, j, l] = monomial_exponents(3, k);
      T v(1);
      for (int t = 0; t < i; ++t) v *= p[0];
      for (int t = 0; t < j; ++t) v *= p[1];
      for (int t = 0; t < l; ++t) v *= p[2];
      ev(r, k) = v;
    }
  }
  const RankKernel<T> rk = rank_and_kernel(ev);
  std::vector<PlaneForm<T>> out;
  for (Index k = 0; k < rk.kernel.rows(); ++k) {
    Vector<T> v = rk.kernel.row(k).transpose();
    out.push_back(PlaneForm<T>::from_vector(3, v));
  }
  return out;
}

/// Unique cubic through nine points, first nonzero coefficient scaled to 1.
/// Throws DegenerateConfig when the points impose fewer than nine
/// conditions on cubics.
template <class T>
CubicModel<T> cubic_through(const std::vector<ProjPoint<T>>& pts) {
  if (pts.size() != 9) throw Usage("a cubic through nine points needs nine points");
  const std::vector<PlaneForm<T>> basis = cubics_through(pts);
  if (basis.size() != 1) {
    throw DegenerateConfig("the nine points lie on " + std::to_string(basis.size()) + " independent cubics");
  }
  Vector<T> v = Vector<T>::Map(basis[0].coeffs().data(), basis[0].size());
  Index first = 0;
  while (is_zero(v(first))) ++first;
  v /= v(first);
  CubicModel<T> cm{PlaneForm<T>::from_vector(3, v), false};
  cm.smooth = is_nonsingular(cm.cubic);
  return cm;
}

/// Cubic through the config's points over the active prime field.
CubicModel<Fp> cubic_through_nine(const PointConfig& config);

template <class T>
T dot(const ProjPoint<T>& a, const ProjPoint<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
ProjPoint<T> gradient(const PlaneForm<T>& f, const ProjPoint<T>& p) {
  return {f.partial(0)(p), f.partial(1)(p), f.partial(2)(p)};
}

template <class T>
ProjPoint<T> cross(const ProjPoint<T>& a, const ProjPoint<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
void require_on_curve(const PlaneForm<T>& cubic, const ProjPoint<T>& p) {
  if (!is_zero(cubic(p))) throw Usage("point is not on the cubic");
}

/// Third intersection of the line PQ (the tangent at P when P = Q) with
/// the cubic, normalized.
template <class T>
ProjPoint<T> third_intersection(const PlaneForm<T>& cubic, const ProjPoint<T>& p, const ProjPoint<T>& q) {
  require_on_curve(cubic, p);
  require_on_curve(cubic, q);
  if (!same_point(p, q)) {
    // F(sP + tQ) = st (as + bt) with a = grad F(P).Q, b = grad F(Q).P.
    const T a = dot(gradient(cubic, p), q);
    const T b = dot(gradient(cubic, q), p);
    if (is_zero(a) && is_zero(b)) throw DegenerateConfig("line through two points lies on the cubic");
    ProjPoint<T> r;
    for (int k = 0; k < 3; ++k) r[k] = b * p[k] - a * q[k];
    return normalized(r);
  }
  const ProjPoint<T> tangent = gradient(cubic, p);
  if (std::all_of(tangent.begin(), tangent.end(), [](const T& c) { return is_zero(c); }))
    throw DegenerateConfig("tangent requested at a singular point");
  for (int e = 0; e < 3; ++e) {
    ProjPoint<T> unit{T(0), T(0), T(0)};
    unit[e] = T(1);
    const ProjPoint<T> v = cross(unit, tangent);
    if (std::all_of(v.begin(), v.end(), [](const T& c) { return is_zero(c); }) || same_point(v, p)) continue;
    // F(sP + tV) = t^2 (s grad F(V).P + t F(V)).
    const T fv = cubic(v);
    const T c = dot(gradient(cubic, v), p);
    if (is_zero(fv) && is_zero(c)) throw DegenerateConfig("tangent line lies on the cubic");
    ProjPoint<T> r;
    for (int k = 0; k < 3; ++k) r[k] = fv * p[k] - c * v[k];
    return normalized(r);
  }
  throw DegenerateConfig("no second point on the tangent line");
}

/// lines * [L] + sum coeff_i [P_i].
template <class T>
struct FormalSum {
  int lines = 0;
  std::vector<std::pair<ProjPoint<T>, int>> terms;

  int degree() const {
    int d = 3 * lines;
    for (const auto& t : terms) d += t.second;
    return d;
  }
};

enum class ReductionOrder { Forward, Reverse, Shuffled };

/// The point whose class equals the degree-one class `sum`, by repeated
/// chord reductions -P-Q = -L + P*Q and P+Q = L - P*Q.
template <class T>
ProjPoint<T> reduce_class(const PlaneForm<T>& cubic, const FormalSum<T>& sum,
                          ReductionOrder order = ReductionOrder::Forward, u64 seed = 0) {
  if (sum.degree() != 1) throw Usage("reduce_class needs a class of degree 1, got " + std::to_string(sum.degree()));
  std::vector<ProjPoint<T>> pos, neg;
  for (const auto& [pt, c] : sum.terms) {
    require_on_curve(cubic, pt);
    for (int k = 0; k < std::abs(c); ++k) (c > 0 ? pos : neg).push_back(normalized(pt));
  }
  if (order == ReductionOrder::Reverse) {
    std::reverse(pos.begin(), pos.end());
    std::reverse(neg.begin(), neg.end());
  } else if (order == ReductionOrder::Shuffled) {
    Rng rng(seed, "reduce-order");
    for (auto* v : {&pos, &neg})
      for (std::size_t i = v->size(); i > 1; --i) std::swap((*v)[i - 1], (*v)[rng.below(i)]);
  }
  int lines = sum.lines;
  while (!(pos.size() == 1 && neg.empty())) {
    if (neg.size() >= 2) {
      ProjPoint<T> a = neg.back();
      neg.pop_back();
      ProjPoint<T> b = neg.back();
      neg.pop_back();
      pos.push_back(third_intersection(cubic, a, b));
      --lines;
    } else if (pos.size() >= 2) {
      ProjPoint<T> a = pos.back();
      pos.pop_back();
      ProjPoint<T> b = pos.back();
      pos.pop_back();
      neg.push_back(third_intersection(cubic, a, b));
      ++lines;
    } else {
      throw InconsistentGeometry("class reduction stalled");
    }
  }
  if (lines != 0) throw InconsistentGeometry("class reduction left a line multiple");
  return pos.front();
}

/// Successive tenth points T(1..g_max) with T(g) = g e + [p9],
/// e = 3[L] - sum [p_i], over the active prime.
std::vector<ProjPoint<Fp>> tenth_points(const PointConfig& config, int g_max);
/// T(g) for g >= 0 (T(0) = p9).
ProjPoint<Fp> tenth_point(const PointConfig& config, int g);

/// Smallest m <= max_m with m e = 0, computed over the active prime field.
/// For a rational config this is a one-sided certificate: an index over
/// the rationals would show up at every prime of good reduction, so a
/// `nullopt` here rules out every index <= max_m. Nine base points of a
/// pencil of cubics have index 1 (computed on a smooth member). Throws
/// DegenerateConfig if the cubic is singular or the points lie on a net.
std::optional<int> halphen_index(const PointConfig& config, int max_m);

// Weierstrass-type models with O = (0:1:0) a flex; P + Q = (P*Q)*O.

struct TorsionModel {
  PlaneForm<Fp> cubic;
  ProjPoint<Fp> torsion;  // (0:0:1)
  std::string family;
};

/// Cubic on which (0,0) has order m (given a generic parameter):
/// m = 2: y^2 = x^3 + u x^2 + v x; m = 3: y^2 + u xy + v y = x^3;
/// 4 <= m <= 9: Tate normal form y^2 + (1-c)xy - by = x^3 - bx^2 with the
/// classical (b, c) parametrizations. Throws Unsupported for other m.
/// For m = 2, 3 the parameter u is fixed to 1 and v = param.
TorsionModel torsion_model(int m, Fp param);

ProjPoint<Fp> flex_origin();
ProjPoint<Fp> group_add(const PlaneForm<Fp>& cubic, const ProjPoint<Fp>& p, const ProjPoint<Fp>& q);
ProjPoint<Fp> group_neg(const PlaneForm<Fp>& cubic, const ProjPoint<Fp>& p);
/// Order of p if <= max_k, else 0.
int point_order(const PlaneForm<Fp>& cubic, const ProjPoint<Fp>& p, int max_k);

/// Index-m configuration over the active prime: eight random affine
/// points of a torsion model, p9 chosen so that e is the order-m class.
/// Retries with fresh draws up to `retry_budget` times.
PointConfig gen_halphen_config(int m, u64 seed, int retry_budget = 20);

/// The config over GF(p): rational configs unchanged, prime-field configs
/// over p unchanged, generated configs regenerated at p from their
/// provenance. Usage for any other prime-field config.
PointConfig config_for_prime(const PointConfig& config, u64 p);

}  // namespace halphen

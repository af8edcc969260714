#pragma once

// Linear systems of plane curves with assigned multiple base points, and
// the cohomology bookkeeping for divisor classes on the blown-up plane.

#include <optional>
#include <string>
#include <vector>

#include "halphen/cubic.hpp"
#include "halphen/picard.hpp"
#include "halphen/planeform.hpp"

namespace halphen {

template <class T>
struct Condition {
  ProjPoint<T> point;
  int mult = 1;
};

/// Forms of degree `degree` with multiplicity >= mult at each point.
template <class T>
struct LinearSpec {
  int degree = 0;
  std::vector<Condition<T>> conditions;

  Index cols() const { return num_monomials(degree); }
  Index rows() const {
    Index r = 0;
    for (const auto& c : conditions)
      if (c.mult > 0) r += Index(c.mult) * (c.mult + 1) / 2;
    return r;
  }
};
using MultiplicitySpec = LinearSpec<Fp>;

template <class T>
struct LinearSystemBasis {
  LinearSpec<T> spec;
  std::vector<PlaneForm<T>> basis;
  Index rows = 0, cols = 0, rank = 0;

  /// Affine dimension (number of basis forms).
  Index dim() const { return cols - rank; }
};

namespace detail {

template <class T>
void require_distinct(const LinearSpec<T>& spec) {
  const auto& cs = spec.conditions;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (same_point(cs[i].point, cs[j].point))
        throw Usage("condition points " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
}

/// Pascal triangle rows 0..n as field elements.
template <class T>
std::vector<std::vector<T>> binomials(int n) {
  std::vector<std::vector<T>> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(static_cast<std::size_t>(i) + 1, T(1));
    for (int k = 1; k < i; ++k) c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
  }
  return c;
}

}  // namespace detail

/// Appends the m(m+1)/2 rows of a multiplicity-m condition, restricted to
/// the listed columns. Row (a, b), a + b < m, is the Hasse derivative
/// coefficient of u^a v^b in the affine chart where the point's last
/// nonzero coordinate is 1 and (u, v) are the remaining coordinates.
template <class T>
void append_condition_rows(Matrix<T>& out, Index first_row, int degree, const Condition<T>& c,
                           const std::vector<Index>& cols, const std::vector<std::vector<T>>& binom) {
  const ProjPoint<T> p = normalized(c.point);
  int chart = 2;
  while (is_zero(p[chart])) --chart;
  const int ui = chart == 0 ? 1 : 0;
  const int vi = chart == 2 ? 1 : 2;
  const T a = p[ui], b = p[vi];
  std::vector<T> ap(static_cast<std::size_t>(degree) + 1), bp(static_cast<std::size_t>(degree) + 1);
  ap[0] = bp[0] = T(1);
  for (int k = 1; k <= degree; ++k) {
    ap[k] = ap[k - 1] * a;
    bp[k] = bp[k - 1] * b;
  }
  std::vector<std::array<int, 2>> uv(cols.size());
  for (std::size_t q = 0; q < cols.size(); ++q) {
    const auto e = monomial_exponents(degree, cols[q]);
    uv[q] = {e[ui], e[vi]};
  }
  Index row = first_row;
  for (int s = 0; s < c.mult; ++s) {
    for (int al = s; al >= 0; --al) {
      const int be = s - al;
      for (std::size_t q = 0; q < cols.size(); ++q) {
        const int eu = uv[q][0], ev = uv[q][1];
        out(row, static_cast<Index>(q)) = (eu < al || ev < be)
                                              ? T(0)
                                              : binom[eu][al] * binom[ev][be] * ap[eu - al] * bp[ev - be];
      }
      ++row;
    }
  }
}

/// Full condition matrix: rows = sum m(m+1)/2, cols = monomials of the degree.
template <class T>
Matrix<T> condition_matrix(const LinearSpec<T>& spec) {
  detail::require_distinct(spec);
  Matrix<T> m(spec.rows(), spec.cols());
  std::vector<Index> cols(static_cast<std::size_t>(spec.cols()));
  for (Index k = 0; k < spec.cols(); ++k) cols[k] = k;
  const auto binom = detail::binomials<T>(std::max(spec.degree, 0));
  Index r = 0;
  for (const auto& c : spec.conditions) {
    if (c.mult <= 0) continue;
    append_condition_rows(m, r, spec.degree, c, cols, binom);
    r += Index(c.mult) * (c.mult + 1) / 2;
  }
  return m;
}

/// Basis of the system, canonical (reduced echelon kernel over the
/// monomial order).
template <class T>
LinearSystemBasis<T> system_basis(const LinearSpec<T>& spec) {
  LinearSystemBasis<T> out;
  out.spec = spec;
  if (spec.degree < 0) return out;
  const Matrix<T> m = condition_matrix(spec);
  const RankKernel<T> rk = rank_and_kernel(m);
  out.rows = m.rows();
  out.cols = m.cols();
  out.rank = rk.rank;
  for (Index k = 0; k < rk.kernel.rows(); ++k)
    out.basis.push_back(PlaneForm<T>::from_vector(spec.degree, rk.kernel.row(k).transpose()));
  return out;
}

/// Affine dimension of the system over the active prime. Three
/// non-collinear points of highest multiplicity are moved to the
/// coordinate vertices, where their conditions only kill monomials, so
/// those rows and columns are dropped before elimination.
Index system_dimension(const MultiplicitySpec& spec);

/// du Val system: degree 3g, multiplicity g at p1..p8, g-1 at p9.
MultiplicitySpec du_val_spec(const std::vector<ProjPoint<Fp>>& pts, int g);

struct Cohomology {
  int h0 = 0, h1 = 0, h2 = 0;
  friend bool operator==(const Cohomology&, const Cohomology&) = default;
};

/// The blow-up at p1..p9 and the tenth point p10(g), over the active prime.
class HalphenSurface {
 public:
  /// g = 0 leaves p10 undefined (classes must then have m10 = 0).
  HalphenSurface(const PointConfig& config, int g);

  const std::vector<ProjPoint<Fp>>& points() const { return pts_; }
  const PointConfig& config() const { return config_; }
  int genus() const { return g_; }

  /// Spec of D after raising negative m_i to 0; nullopt when d < 0.
  std::optional<MultiplicitySpec> spec_for(const DivisorClass& d) const;
  int h0(const DivisorClass& d) const;
  /// h0(K - D).
  int h2(const DivisorClass& d) const;
  /// h0 + h2 - chi; InconsistentGeometry if negative.
  int h1(const DivisorClass& d) const;
  Cohomology cohomology(const DivisorClass& d) const;

 private:
  PointConfig config_;
  int g_;
  std::vector<ProjPoint<Fp>> pts_;  // 9 or 10
};

int h0(const DivisorClass& d, const PointConfig& config, int g);
int h1(const DivisorClass& d, const PointConfig& config, int g);
int h2(const DivisorClass& d, const PointConfig& config, int g);

struct GeneralityResult {
  bool general = true;
  int witness = 0;                      // first h with dim |hJ'| > 1
  std::vector<Index> dims;              // affine dim of |hJ'| for h = 1..k
  std::optional<int> index;             // halphen_index(config, k)
  bool agrees = true;                   // dims match 1 + floor(h / index)
};

/// k-Halphen generality by interpolation, cross-checked against the
/// group-law index.
GeneralityResult is_k_halphen_general(const PointConfig& config, int k);

/// Classes (d; m1..m9), d <= degree_bound, 0 <= m_i <= d, D^2 = -2,
/// D.J' = 0, with h0 > 0. Empty means unnodal up to the bound only.
std::vector<DivisorClass> nodal_class_scan(const PointConfig& config, int degree_bound = 12);

struct PropRow {
  std::string divisor;
  Cohomology expected;
  Cohomology computed;
  bool pass = false;
};

/// Cohomology table of B, 2B, 2B-J, A-B, B-A for an index-(s+1) config.
/// Throws Precondition when the index differs.
std::vector<PropRow> verify_prop_calcoli(int s, const PointConfig& config);

struct BasePointCheck {
  bool base_point_found = false;
  std::vector<int> local_exponents;  // x-adic valuation of the resultant at each assigned point
  std::string detail;
};

struct PropAResult {
  std::vector<PropRow> rows;            // A, A-J, 2A
  BasePointCheck base_points;
  int quadrics_expected = 0;
  int quadrics_computed = 0;
  bool pass = false;
};

/// Probabilistic base-point search for a linear system: resultants of
/// random members, with the assigned points stripped. Reports exponents
/// m_i^2 at an ordinary base point of multiplicity m_i.
BasePointCheck find_base_points(const std::vector<PlaneForm<Fp>>& basis, const std::vector<Condition<Fp>>& assigned,
                                u64 seed, int trials = 3);

PropAResult verify_prop_A(int s, const PointConfig& config);

}  // namespace halphen

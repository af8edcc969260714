#pragma once

// Homogeneous polynomials in x, y, z of fixed degree.
//
// Monomials x^i y^j z^k (i + j + k = d) are stored in lex order x > y > z:
// with a = d - i, the index is a(a+1)/2 + (a - j).

#include <array>
#include <vector>

#include "halphen/dense.hpp"
#include "halphen/errors.hpp"
#include "halphen/unipoly.hpp"

namespace halphen {

template <class T>
using ProjPoint = std::array<T, 3>;

inline Index num_monomials(int d) { return d < 0 ? 0 : Index(d + 1) * (d + 2) / 2; }
inline Index monomial_index(int d, int i, int j) {
  const Index a = d - i;
  return a * (a + 1) / 2 + (a - j);
}
/// Exponents (i, j, k) of the monomial at index `idx` of degree d.
inline std::array<int, 3> monomial_exponents(int d, Index idx) {
  int a = 0;
  while (Index(a + 1) * (a + 2) / 2 <= idx) ++a;
  const int j = a - static_cast<int>(idx - Index(a) * (a + 1) / 2);
  const int i = d - a;
  return {i, j, d - i - j};
}

template <class T>
class PlaneForm {
 public:
  PlaneForm() = default;
  explicit PlaneForm(int d) : d_(d), c_(static_cast<std::size_t>(num_monomials(d)), T(0)) {
    if (d < 0) throw Usage("plane form of negative degree");
  }
  PlaneForm(int d, std::vector<T> coeffs) : d_(d), c_(std::move(coeffs)) {
    if (static_cast<Index>(c_.size()) != num_monomials(d)) throw Usage("coefficient count does not match degree");
  }
  template <class Derived>
  static PlaneForm from_vector(int d, const Eigen::MatrixBase<Derived>& v) {
    std::vector<T> c(static_cast<std::size_t>(v.size()));
    for (Index k = 0; k < v.size(); ++k) c[static_cast<std::size_t>(k)] = v(k);
    return PlaneForm(d, std::move(c));
  }

  int degree() const { return d_; }
  Index size() const { return static_cast<Index>(c_.size()); }
  const std::vector<T>& coeffs() const { return c_; }
  std::vector<T>& coeffs() { return c_; }
  const T& operator[](Index k) const { return c_[static_cast<std::size_t>(k)]; }
  T& operator[](Index k) { return c_[static_cast<std::size_t>(k)]; }
  /// Coefficient of x^i y^j z^(d-i-j).
  T coeff(int i, int j) const { return c_[static_cast<std::size_t>(monomial_index(d_, i, j))]; }
  T& coeff(int i, int j) { return c_[static_cast<std::size_t>(monomial_index(d_, i, j))]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& a) { return halphen::is_zero(a); });
  }

  T operator()(const ProjPoint<T>& p) const { return eval(p[0], p[1], p[2]); }
  /// Horner in x over Horner in y, with z powers tabulated.
  T eval(const T& x, const T& y, const T& z) const {
    std::vector<T> zp(static_cast<std::size_t>(d_) + 1);
    zp[0] = T(1);
    for (int k = 1; k <= d_; ++k) zp[static_cast<std::size_t>(k)] = zp[static_cast<std::size_t>(k - 1)] * z;
    T acc(0);
    for (int i = d_; i >= 0; --i) {
      T inner(0);
      const int r = d_ - i;
      for (int j = r; j >= 0; --j) inner = inner * y + coeff(i, j) * zp[static_cast<std::size_t>(r - j)];
      acc = acc * x + inner;
    }
    return acc;
  }

  /// Partial derivative in variable 0 (x), 1 (y) or 2 (z).
  PlaneForm partial(int var) const {
    if (d_ == 0) return PlaneForm(0);
    PlaneForm r(d_ - 1);
    for (int i = 0; i <= d_; ++i) {
      for (int j = 0; i + j <= d_; ++j) {
        const int k = d_ - i - j;
        const T& c = coeff(i, j);
        if (halphen::is_zero(c)) continue;
        if (var == 0 && i > 0) r.coeff(i - 1, j) += T(i) * c;
        if (var == 1 && j > 0) r.coeff(i, j - 1) += T(j) * c;
        if (var == 2 && k > 0) r.coeff(i, j) += T(k) * c;
      }
    }
    return r;
  }

  /// Substitution x -> x + lambda*y.
  PlaneForm shear(const T& lambda) const {
    PlaneForm r(d_);
    std::vector<T> lp(static_cast<std::size_t>(d_) + 1);
    lp[0] = T(1);
    for (int k = 1; k <= d_; ++k) lp[static_cast<std::size_t>(k)] = lp[static_cast<std::size_t>(k - 1)] * lambda;
    std::vector<T> row{T(1)};  // binomials C(i, t)
    for (int i = 0; i <= d_; ++i) {
      if (i > 0) {
        std::vector<T> next(static_cast<std::size_t>(i) + 1, T(1));
        for (int t = 1; t < i; ++t) next[static_cast<std::size_t>(t)] = row[static_cast<std::size_t>(t - 1)] + row[static_cast<std::size_t>(t)];
        row = std::move(next);
      }
      for (int j = 0; i + j <= d_; ++j) {
        const T& c = coeff(i, j);
        if (halphen::is_zero(c)) continue;
        // (x + lambda y)^i y^j = sum_t C(i,t) x^t lambda^(i-t) y^(i-t+j)
        for (int t = 0; t <= i; ++t)
          r.coeff(t, i - t + j) += c * row[static_cast<std::size_t>(t)] * lp[static_cast<std::size_t>(i - t)];
      }
    }
    return r;
  }

  /// f(x0, y, 1) as a polynomial in y.
  UniPoly<T> restrict_x(const T& x0) const {
    std::vector<T> c(static_cast<std::size_t>(d_) + 1, T(0));
    std::vector<T> xp(static_cast<std::size_t>(d_) + 1);
    xp[0] = T(1);
    for (int k = 1; k <= d_; ++k) xp[static_cast<std::size_t>(k)] = xp[static_cast<std::size_t>(k - 1)] * x0;
    for (int i = 0; i <= d_; ++i)
      for (int j = 0; i + j <= d_; ++j) c[static_cast<std::size_t>(j)] += coeff(i, j) * xp[static_cast<std::size_t>(i)];
    return UniPoly<T>(std::move(c));
  }

  /// f(t, 1, 0) as a polynomial in t (the line at infinity minus (1:0:0)).
  UniPoly<T> restrict_infinity() const {
    std::vector<T> c(static_cast<std::size_t>(d_) + 1, T(0));
    for (int i = 0; i <= d_; ++i) c[static_cast<std::size_t>(i)] = coeff(i, d_ - i);
    return UniPoly<T>(std::move(c));
  }

  friend PlaneForm operator+(const PlaneForm& a, const PlaneForm& b) {
    check_same(a, b);
    PlaneForm r(a);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
  }
  friend PlaneForm operator-(const PlaneForm& a, const PlaneForm& b) {
    check_same(a, b);
    PlaneForm r(a);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
    return r;
  }
  friend PlaneForm operator*(const T& s, const PlaneForm& a) {
    PlaneForm r(a);
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend PlaneForm operator*(const PlaneForm& a, const PlaneForm& b) {
    PlaneForm r(a.d_ + b.d_);
    for (int i = 0; i <= a.d_; ++i)
      for (int j = 0; i + j <= a.d_; ++j) {
        const T& ca = a.coeff(i, j);
        if (halphen::is_zero(ca)) continue;
        for (int k = 0; k <= b.d_; ++k)
          for (int l = 0; k + l <= b.d_; ++l) r.coeff(i + k, j + l) += ca * b.coeff(k, l);
      }
    return r;
  }
  friend bool operator==(const PlaneForm& a, const PlaneForm& b) { return a.d_ == b.d_ && a.c_ == b.c_; }

 private:
  static void check_same(const PlaneForm& a, const PlaneForm& b) {
    if (a.d_ != b.d_) throw Usage("adding plane forms of different degrees");
  }

  int d_ = 0;
  std::vector<T> c_{T{}};
};

/// Scales p so that its last nonzero coordinate is 1.
template <class T>
ProjPoint<T> normalized(ProjPoint<T> p) {
  for (int k = 2; k >= 0; --k) {
    if (!is_zero(p[k])) {
      const T inv = T(1) / p[k];
      for (auto& c : p) c *= inv;
      return p;
    }
  }
  throw Usage("zero vector is not a projective point");
}

template <class T>
bool same_point(const ProjPoint<T>& a, const ProjPoint<T>& b) {
  return is_zero(a[0] * b[1] - a[1] * b[0]) && is_zero(a[0] * b[2] - a[2] * b[0]) &&
         is_zero(a[1] * b[2] - a[2] * b[1]);
}

template <class T>
ProjPoint<T> affine_point(const T& x, const T& y) {
  return {x, y, T(1)};
}

/// True when the y^d coefficient is nonzero, so that restricting to any
/// vertical line keeps the y-degree.
template <class T>
bool monic_in_y(const PlaneForm<T>& f) {
  return !is_zero(f.coeff(0, f.degree()));
}

/// Res_y(f(x,y,1), g(x,y,1)) as a polynomial in x, by evaluation at
/// x = 0, 1, ..., deg f * deg g and interpolation. Both forms must be
/// monic_in_y.
template <class T>
UniPoly<T> resultant_y(const PlaneForm<T>& f, const PlaneForm<T>& g) {
  if (!monic_in_y(f) || !monic_in_y(g)) throw Usage("resultant_y needs forms with a y^d term");
  const int n = f.degree() * g.degree() + 1;
  std::vector<T> xs, ys;
  xs.reserve(static_cast<std::size_t>(n));
  ys.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const T x(k);
    xs.push_back(x);
    ys.push_back(resultant(f.restrict_x(x), g.restrict_x(x)));
  }
  return interpolate(xs, ys);
}

/// Whether the forms share a zero on the line z = 0, over the algebraic
/// closure.
template <class T>
bool common_zero_at_infinity(const std::vector<PlaneForm<T>>& forms) {
  if (forms.empty()) return true;
  bool at_x = true;  // (1:0:0)
  for (const auto& f : forms) at_x = at_x && is_zero(f.coeff(f.degree(), 0));
  if (at_x) return true;
  UniPoly<T> g;
  for (const auto& f : forms) g = gcd(g, f.restrict_infinity());
  return g.is_zero() || g.degree() > 0;
}

}  // namespace halphen

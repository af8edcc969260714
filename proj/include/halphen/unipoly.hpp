#pragma once

// Dense univariate polynomials over an exact field (Fp or Rational).

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "halphen/errors.hpp"
#include "halphen/fp.hpp"
#include "halphen/rational.hpp"

namespace halphen {

template <class T>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static UniPoly constant(const T& a) { return UniPoly(std::vector<T>{a}); }
  /// X - a
  static UniPoly linear_root(const T& a) { return UniPoly(std::vector<T>{-a, T(1)}); }
  static UniPoly monomial(int deg, const T& a = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(deg) + 1, T(0));
    c.back() = a;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  T coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : T(0); }
  const T& lead() const { return c_.back(); }
  const std::vector<T>& coeffs() const { return c_; }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = T(static_cast<long>(i)) * c_[i];
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    T inv = T(1) / lead();
    std::vector<T> d(c_);
    for (auto& a : d) a *= inv;
    return UniPoly(std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (halphen::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const T& s, const UniPoly& a) {
    std::vector<T> r(a.c_);
    for (auto& x : r) x *= s;
    return UniPoly(std::move(r));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; throws Usage on division by zero.
  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Usage("polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<T> r(a.c_);
    std::vector<T> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), T(0));
    const T inv = T(1) / b.lead();
    const int db = b.degree();
    for (int i = a.degree(); i >= db; --i) {
      const T f = r[static_cast<std::size_t>(i)] * inv;
      if (halphen::is_zero(f)) continue;
      q[static_cast<std::size_t>(i - db)] = f;
      for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }

 private:
  void normalize() {
    while (!c_.empty() && halphen::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Monic gcd (zero if both inputs are zero).
template <class T>
UniPoly<T> gcd(UniPoly<T> a, UniPoly<T> b) {
  while (!b.is_zero()) {
    UniPoly<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m.
template <class T>
UniPoly<T> powmod(UniPoly<T> base, u64 e, const UniPoly<T>& m) {
  UniPoly<T> r = UniPoly<T>::constant(T(1)) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    e >>= 1;
    if (e) base = (base * base) % m;
  }
  return r;
}

/// Resultant by the Euclidean recurrence
/// res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) res(b, r), r = a mod b.
template <class T>
T resultant(UniPoly<T> a, UniPoly<T> b) {
  if (a.is_zero() || b.is_zero()) return T(0);
  T acc(1);
  while (true) {
    const int da = a.degree();
    const int db = b.degree();
    if (db == 0) {
      T p(1);
      for (int i = 0; i < da; ++i) p *= b.lead();
      return acc * p;
    }
    UniPoly<T> r = a % b;
    if (r.is_zero()) return T(0);
    const int dr = r.degree();
    if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
    for (int i = 0; i < da - dr; ++i) acc *= b.lead();
    a = std::move(b);
    b = std::move(r);
  }
}

template <class T>
bool is_squarefree(const UniPoly<T>& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// Multiplicity of the root a, and f divided by (X - a)^mult.
template <class T>
std::pair<int, UniPoly<T>> strip_root(UniPoly<T> f, const T& a) {
  if (f.is_zero()) throw Usage("valuation of the zero polynomial");
  int mult = 0;
  const UniPoly<T> lin = UniPoly<T>::linear_root(a);
  while (f.degree() >= 1) {
    auto [q, r] = divmod(f, lin);
    if (!r.is_zero()) break;
    f = std::move(q);
    ++mult;
  }
  return {mult, f};
}

/// Newton interpolation through (xs[i], ys[i]) with distinct xs.
template <class T>
UniPoly<T> interpolate(const std::vector<T>& xs, const std::vector<T>& ys) {
  const std::size_t n = xs.size();
  if (ys.size() != n) throw Usage("interpolation needs as many values as nodes");
  std::vector<T> dd(ys);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      const T den = xs[i] - xs[i - k];
      if (is_zero(den)) throw Usage("interpolation nodes are not distinct");
      dd[i] = (dd[i] - dd[i - 1]) / den;
      if (i == k) break;
    }
  }
  UniPoly<T> p;
  for (std::size_t i = n; i-- > 0;) {
    p = p * UniPoly<T>::linear_root(xs[i]) + UniPoly<T>::constant(dd[i]);
  }
  return p;
}

struct FieldRoot {
  Fp value;
  int multiplicity;
};

/// Roots of f lying in the active GF(p), ascending by residue, each with its
/// multiplicity. Distinct roots are isolated as gcd(f, X^p - X), then split
/// by random translates (X + a)^((p-1)/2) - 1. The splitting randomness is
/// seeded from f, so the call is deterministic.
std::vector<FieldRoot> roots_in_field(const UniPoly<Fp>& f);

}  // namespace halphen

#pragma once

// Prime-field scalar for the exact linear algebra.
//
// Fp stores only its canonical residue (0 <= v < p). The modulus is a
// per-thread context installed with PrimeScope, in the manner of NTL's
// zz_p::init: this keeps Fp a plain 8-byte value so that it can be used as
// an Eigen scalar and packed densely in large matrices.

#include <Eigen/Core>

#include <concepts>
#include <cstdint>
#include <iosfwd>

#include "halphen/errors.hpp"

namespace halphen {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// The default session prime 2^61 - 1.
inline constexpr u64 kMersenne61 = (u64{1} << 61) - 1;
/// Default confirmation prime: the largest prime below 2^61 - 1.
inline constexpr u64 kSecondPrime = (u64{1} << 61) - 31;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(u64 n);

/// Immutable description of GF(p) for an odd prime 5 <= p < 2^62.
class PrimeField {
 public:
  explicit PrimeField(u64 p);

  u64 modulus() const noexcept { return p_; }

  u64 add(u64 a, u64 b) const noexcept {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const noexcept {
    u128 x = static_cast<u128>(a) * b;
    if (mersenne_) {
      u64 r = static_cast<u64>(x & kMersenne61) + static_cast<u64>(x >> 61);
      r = (r & kMersenne61) + (r >> 61);
      return r >= kMersenne61 ? r - kMersenne61 : r;
    }
    return static_cast<u64>(x % p_);
  }
  u64 pow(u64 a, u64 e) const noexcept;
  /// Throws Usage on a == 0.
  u64 inv(u64 a) const;
  u64 reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    return a.p_ == b.p_;
  }

 private:
  u64 p_;
  bool mersenne_;
};

namespace detail {
const PrimeField& current_field();
}  // namespace detail

/// Installs GF(p) as the active field on this thread for the scope's lifetime.
class PrimeScope {
 public:
  explicit PrimeScope(u64 p);
  explicit PrimeScope(const PrimeField& field) : PrimeScope(field.modulus()) {}
  ~PrimeScope();
  PrimeScope(const PrimeScope&) = delete;
  PrimeScope& operator=(const PrimeScope&) = delete;

 private:
  const PrimeField* previous_;
  const PrimeField* installed_;
};

/// True when some PrimeScope is active on this thread.
bool has_active_prime();
/// Modulus of the active field; throws Usage when none is installed.
u64 active_prime();

class Fp {
 public:
  Fp() = default;
  template <std::integral I>
  Fp(I v) {  // NOLINT: implicit so Eigen can write Scalar(0), Scalar(1)
    const auto& f = detail::current_field();
    if constexpr (std::is_signed_v<I>) {
      v_ = f.reduce(static_cast<std::int64_t>(v));
    } else {
      v_ = static_cast<u64>(v) % f.modulus();
    }
  }

  static Fp from_raw(u64 v) noexcept {
    Fp r;
    r.v_ = v;
    return r;
  }

  u64 value() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp& operator+=(Fp o) noexcept {
    v_ = detail::current_field().add(v_, o.v_);
    return *this;
  }
  Fp& operator-=(Fp o) noexcept {
    v_ = detail::current_field().sub(v_, o.v_);
    return *this;
  }
  Fp& operator*=(Fp o) noexcept {
    v_ = detail::current_field().mul(v_, o.v_);
    return *this;
  }
  Fp& operator/=(Fp o) { return *this *= o.inverse(); }

  Fp operator-() const noexcept { return from_raw(detail::current_field().neg(v_)); }
  Fp inverse() const { return from_raw(detail::current_field().inv(v_)); }
  Fp pow(u64 e) const noexcept { return from_raw(detail::current_field().pow(v_, e)); }

  friend Fp operator+(Fp a, Fp b) noexcept { return a += b; }
  friend Fp operator-(Fp a, Fp b) noexcept { return a -= b; }
  friend Fp operator*(Fp a, Fp b) noexcept { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  friend bool operator==(Fp a, Fp b) noexcept { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) noexcept { return a.v_ != b.v_; }
  // Total order on residues, used only for sorting and deterministic output.
  friend bool operator<(Fp a, Fp b) noexcept { return a.v_ < b.v_; }

  friend std::ostream& operator<<(std::ostream& os, Fp a);

 private:
  u64 v_ = 0;
};

inline bool is_zero(const Fp& a) { return a.is_zero(); }

/// Shoup's precomputed multiplier: for a fixed w, w*b mod p costs two
/// word multiplies. Valid for p < 2^63.
struct ShoupMultiplier {
  u64 w;
  u64 w_prime;  // floor(w * 2^64 / p)

  ShoupMultiplier(u64 w_, u64 p)
      : w(w_), w_prime(static_cast<u64>((static_cast<u128>(w_) << 64) / p)) {}

  u64 operator()(u64 b, u64 p) const noexcept {
    u64 q = static_cast<u64>((static_cast<u128>(w_prime) * b) >> 64);
    u64 r = w * b - q * p;
    return r >= p ? r - p : r;
  }
};

}  // namespace halphen

namespace Eigen {
template <>
struct NumTraits<halphen::Fp> : GenericNumTraits<halphen::Fp> {
  using Real = halphen::Fp;
  using NonInteger = halphen::Fp;
  using Nested = halphen::Fp;
  using Literal = halphen::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real::from_raw(0); }
  static inline Real dummy_precision() { return Real::from_raw(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

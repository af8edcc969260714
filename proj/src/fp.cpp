#include "halphen/fp.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>

#include "halphen/rational.hpp"

namespace halphen {

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

thread_local const PrimeField* tls_field = nullptr;

// PrimeField objects are interned so that scopes can hand out stable pointers.
const PrimeField* intern_field(u64 p) {
  static std::mutex mu;
  static std::map<u64, std::unique_ptr<PrimeField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[p];
  if (!slot) slot = std::make_unique<PrimeField>(p);
  return slot.get();
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 p) : p_(p), mersenne_(p == kMersenne61) {
  if (p < 5 || p >= (u64{1} << 62) || !is_prime_u64(p)) {
    throw Usage("modulus " + std::to_string(p) + " is not a prime in [5, 2^62)");
  }
}

u64 PrimeField::pow(u64 a, u64 e) const noexcept {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 PrimeField::inv(u64 a) const {
  if (a == 0) throw Usage("inverse of zero in GF(" + std::to_string(p_) + ")");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<u64>(t);
}

namespace detail {
const PrimeField& current_field() {
  if (!tls_field) throw Usage("no prime field is active on this thread");
  return *tls_field;
}
}  // namespace detail

PrimeScope::PrimeScope(u64 p) : previous_(tls_field), installed_(intern_field(p)) {
  tls_field = installed_;
}

PrimeScope::~PrimeScope() { tls_field = previous_; }

bool has_active_prime() { return tls_field != nullptr; }

u64 active_prime() { return detail::current_field().modulus(); }

std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.value(); }

Fp reduce_rational(const Rational& q, const std::string& what) {
  const u64 p = active_prime();
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer pm(p);
  Integer dr = den % pm;
  if (dr == 0) {
    throw BadPrime("denominator of " + what + " is divisible by " + std::to_string(p));
  }
  Integer nr = num % pm;
  if (nr < 0) nr += pm;
  Fp n = Fp::from_raw(nr.convert_to<u64>());
  Fp d = Fp::from_raw(dr.convert_to<u64>());
  return n / d;
}

}  // namespace halphen

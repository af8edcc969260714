#include "halphen/unipoly.hpp"

#include <functional>

#include "halphen/random.hpp"

namespace halphen {

namespace {

using Poly = UniPoly<Fp>;

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const Poly& g, Rng& rng, std::vector<Fp>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g[0] / g[1]);
    return;
  }
  const u64 half = (active_prime() - 1) / 2;
  while (true) {
    const Fp a = rng.residue();
    Poly t = powmod(Poly(std::vector<Fp>{a, Fp(1)}), half, g) - Poly::constant(Fp(1));
    Poly h = gcd(g, t);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear(g / h, rng, out);
      return;
    }
  }
}

u64 coefficient_digest(const Poly& f) {
  u64 h = 0x6a09e667f3bcc909ull ^ active_prime();
  for (const Fp& c : f.coeffs()) h = splitmix64(h ^ c.value());
  return h;
}

}  // namespace

std::vector<FieldRoot> roots_in_field(const UniPoly<Fp>& f) {
  if (f.is_zero()) throw Usage("roots of the zero polynomial");
  std::vector<FieldRoot> out;
  if (f.degree() == 0) return out;
  const Poly m = f.monic();
  const Poly x = Poly::monomial(1);
  Poly g = gcd(m, powmod(x, active_prime(), m) - x);
  std::vector<Fp> roots;
  Rng rng(coefficient_digest(m));
  split_linear(g, rng, roots);
  std::sort(roots.begin(), roots.end());
  for (const Fp& r : roots) out.push_back({r, strip_root(m, r).first});
  return out;
}

}  // namespace halphen

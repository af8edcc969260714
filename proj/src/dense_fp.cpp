#include <algorithm>
#include <numeric>
#include <string>

#include "halphen/dense.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace halphen {

namespace {

constexpr Index kLanes = 16;

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

// w[a][j] -= c[a] * pivot[j] for j in [from, n), for NA active rows at once.
template <int NA>
void apply_pivot(u64* const* w, const ShoupMultiplier* ms, const u64* pivot, Index from,
                 Index n, u64 p) {
  for (Index j = from; j < n; ++j) {
    const u64 x = pivot[j];
    if (x == 0) continue;
    for (int a = 0; a < NA; ++a) w[a][j] = sub_mod(w[a][j], ms[a](x, p), p);
  }
}

// 128-bit accumulator reduction: acc = hi * 2^64 + lo, with 2^64 mod p folded
// in through a Shoup multiplier.
struct WideReducer {
  u64 p;
  u64 barrett;  // floor(2^64 / p)
  ShoupMultiplier two64;

  explicit WideReducer(u64 p_)
      : p(p_),
        barrett(static_cast<u64>((static_cast<u128>(1) << 64) / p_)),
        two64(static_cast<u64>((static_cast<u128>(1) << 64) % p_), p_) {}

  u64 operator()(u128 acc) const noexcept {
    const u64 hi = static_cast<u64>(acc >> 64);
    const u64 lo = static_cast<u64>(acc);
    u64 q = static_cast<u64>((static_cast<u128>(lo) * barrett) >> 64);
    u64 r = lo - q * p;
    while (r >= p) r -= p;
    u64 h = two64(hi, p);
    r += h;
    return r >= p ? r - p : r;
  }
};

// Reduction for p = 2^61 - 1 by folding, valid for acc < 2^127.
struct MersenneReducer {
  u64 p = kMersenne61;
  u64 operator()(u128 acc) const noexcept {
    const u64 lo = static_cast<u64>(acc) & kMersenne61;
    const u128 h = acc >> 61;
    const u64 hh = (static_cast<u64>(h) & kMersenne61) + static_cast<u64>(h >> 61);
    u64 r = lo + hh;
    r = (r & kMersenne61) + (r >> 61);
    return r >= kMersenne61 ? r - kMersenne61 : r;
  }
};

constexpr int kMaxBlock = 16;

// w[b][j] -= sum_k c[b][k] * piv[k][j] for j in [from, n), B rows at once.
// K products of residues must fit in 128 bits: K = 16 needs p <= 2^61.
template <int B, int K, class Red>
void apply_block(u64* const* w, const u64 (*c)[kMaxBlock], const u64* const* piv,
                 Index from, Index n, const Red& red) {
  const u64 p = red.p;
  for (Index j = from; j < n; ++j) {
    u128 acc[B] = {};
#pragma GCC unroll 16
    for (int k = 0; k < K; ++k) {
      const u64 x = piv[k][j];
#pragma GCC unroll 4
      for (int b = 0; b < B; ++b) acc[b] += static_cast<u128>(c[b][k]) * x;
    }
    for (int b = 0; b < B; ++b) w[b][j] = sub_mod(w[b][j], red(acc[b]), p);
  }
}

// Reduces `count` consecutive work rows against pivots [0, upto).
template <int K, class Red>
void reduce_lanes_impl(u64* work, Index count, Index n, const u64* piv, const Index* lead,
                       Index upto, const Red& red) {
  const PrimeField& f = detail::current_field();
  constexpr int kGroup = 4;
  for (Index g0 = 0; g0 < count; g0 += kGroup) {
    const int nb = static_cast<int>(std::min<Index>(kGroup, count - g0));
    u64* rows[kGroup];
    for (int b = 0; b < nb; ++b) rows[b] = work + (g0 + b) * n;
    for (Index k0 = 0; k0 < upto; k0 += K) {
      const int kb = static_cast<int>(std::min<Index>(K, upto - k0));
      const u64* prow[kMaxBlock];
      Index from = n;
      for (int k = 0; k < K; ++k) {
        prow[k] = piv + (k0 + std::min(k, kb - 1)) * n;
        if (k < kb) from = std::min(from, lead[k0 + k]);
      }
      // Coefficients of this block, resolved through the block's own pivots.
      u64 c[kGroup][kMaxBlock] = {};
      bool any = false;
      for (int b = 0; b < nb; ++b) {
        for (int k = 0; k < kb; ++k) {
          const Index l = lead[k0 + k];
          u64 v = rows[b][l];
          for (int t = 0; t < k; ++t) {
            if (c[b][t]) v = f.sub(v, f.mul(c[b][t], prow[t][l]));
          }
          c[b][k] = v;
          any = any || v != 0;
        }
      }
      if (!any) continue;
      switch (nb) {
        case 1: apply_block<1, K>(rows, c, prow, from, n, red); break;
        case 2: apply_block<2, K>(rows, c, prow, from, n, red); break;
        case 3: apply_block<3, K>(rows, c, prow, from, n, red); break;
        default: apply_block<4, K>(rows, c, prow, from, n, red); break;
      }
    }
  }
}

void reduce_lanes(u64* work, Index count, Index n, const u64* piv, const Index* lead,
                  Index upto, u64 p) {
  if (p == kMersenne61) {
    reduce_lanes_impl<16>(work, count, n, piv, lead, upto, MersenneReducer{});
  } else if (p <= (u64{1} << 61)) {
    reduce_lanes_impl<16>(work, count, n, piv, lead, upto, WideReducer(p));
  } else {
    reduce_lanes_impl<8>(work, count, n, piv, lead, upto, WideReducer(p));
  }
}

}  // namespace

Echelon<Fp> row_echelon(const MatrixFp& m, bool reduce, RowOrder order) {
  const u64 p = active_prime();
  const Index n = m.cols();
  const Index nrows = m.rows();
  const Index max_rank = std::min(nrows, n);

  std::vector<u64> piv;
  piv.reserve(static_cast<std::size_t>(max_rank * n));
  std::vector<Index> lead;
  lead.reserve(static_cast<std::size_t>(max_rank));

  int threads = 1;
#ifdef _OPENMP
  threads = std::max(1, omp_get_max_threads());
#endif
  const Index chunk = kLanes * threads;
  std::vector<u64> work(static_cast<std::size_t>(chunk * n));

  for (Index start = 0; start < nrows && static_cast<Index>(lead.size()) < n; start += chunk) {
    const Index cnt = std::min(chunk, nrows - start);
    for (Index b = 0; b < cnt; ++b) {
      const Index src = order == RowOrder::Forward ? start + b : nrows - 1 - (start + b);
      u64* w = work.data() + b * n;
      for (Index j = 0; j < n; ++j) w[j] = m(src, j).value();
    }
    const Index existing = static_cast<Index>(lead.size());
    const u64* pv = piv.data();
    const Index* ld = lead.data();
    const Index groups = (cnt + kLanes - 1) / kLanes;
#pragma omp parallel for schedule(static) if (groups > 1)
    for (Index g = 0; g < groups; ++g) {
      const Index b0 = g * kLanes;
      reduce_lanes(work.data() + b0 * n, std::min(kLanes, cnt - b0), n, pv, ld, existing, p);
    }
    // Rows of this chunk against the pivots the chunk itself produced.
    for (Index b = 0; b < cnt; ++b) {
      u64* w = work.data() + b * n;
      for (Index k = existing; k < static_cast<Index>(lead.size()); ++k) {
        const Index l = lead[k];
        const u64 c = w[l];
        if (c == 0) continue;
        ShoupMultiplier ms(c, p);
        u64* rows[1] = {w};
        apply_pivot<1>(rows, &ms, piv.data() + k * n, l, n, p);
      }
      Index l = 0;
      while (l < n && w[l] == 0) ++l;
      if (l == n) continue;
      const PrimeField& f = detail::current_field();
      ShoupMultiplier inv(f.inv(w[l]), p);
      const std::size_t base = piv.size();
      piv.resize(base + static_cast<std::size_t>(n));
      u64* dst = piv.data() + base;
      for (Index j = 0; j < n; ++j) dst[j] = w[j] == 0 ? 0 : inv(w[j], p);
      lead.push_back(l);
    }
  }

  const Index r = static_cast<Index>(lead.size());
  std::vector<Index> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::sort(perm.begin(), perm.end(), [&](Index a, Index b) { return lead[a] < lead[b]; });

  Echelon<Fp> e;
  e.rank = r;
  e.cols = n;
  e.rows.resize(r, n);
  u64* out = reinterpret_cast<u64*>(e.rows.data());
  static_assert(sizeof(Fp) == sizeof(u64));
  for (Index i = 0; i < r; ++i) {
    std::copy_n(piv.data() + perm[i] * n, n, out + i * n);
    e.pivot_cols.push_back(lead[perm[i]]);
  }
  piv.clear();
  piv.shrink_to_fit();

  if (reduce) {
    for (Index i = r - 1; i >= 0; --i) {
      const Index c = e.pivot_cols[i];
      const u64* src = out + i * n;
#pragma omp parallel for schedule(static) if (i > 256)
      for (Index q = 0; q < i; ++q) {
        u64* dst = out + q * n;
        const u64 f = dst[c];
        if (f == 0) continue;
        ShoupMultiplier ms(f, p);
        u64* rows[1] = {dst};
        apply_pivot<1>(rows, &ms, src, c, n, p);
      }
    }
    e.reduced = true;
  }
  return e;
}

AnyMatrix make_dense(Index rows, Index cols, const std::vector<FieldScalar>& entries) {
  if (static_cast<Index>(entries.size()) != rows * cols) {
    throw Usage("entry count " + std::to_string(entries.size()) + " does not match " +
                std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (entries.empty()) return MatrixQ(rows, cols);
  const bool rational = std::holds_alternative<Rational>(entries.front());
  const u64 p = rational ? 0 : std::get<PrimeResidue>(entries.front()).p;
  for (const auto& e : entries) {
    if (std::holds_alternative<Rational>(e) != rational ||
        (!rational && std::get<PrimeResidue>(e).p != p)) {
      throw Usage("matrix entries belong to different fields");
    }
  }
  if (rational) {
    MatrixQ m(rows, cols);
    for (Index i = 0; i < rows * cols; ++i) m(i / cols, i % cols) = std::get<Rational>(entries[i]);
    return m;
  }
  if (!has_active_prime() || active_prime() != p) {
    throw Usage("matrix entries are residues mod " + std::to_string(p) +
                " but that field is not active");
  }
  MatrixFp m(rows, cols);
  for (Index i = 0; i < rows * cols; ++i) {
    const u64 v = std::get<PrimeResidue>(entries[i]).v;
    if (v >= p) throw Usage("residue not reduced modulo " + std::to_string(p));
    m(i / cols, i % cols) = Fp::from_raw(v);
  }
  return m;
}

std::array<u64, 2> reduce_rational_point(const std::array<Rational, 2>& pt, u64 p) {
  std::array<u64, 2> out{};
  const Integer pm(p);
  const char* names[2] = {"x", "y"};
  for (int i = 0; i < 2; ++i) {
    Integer num = boost::multiprecision::numerator(pt[i]);
    Integer den = boost::multiprecision::denominator(pt[i]);
    if (den % pm == 0) {
      throw BadPrime(std::string("denominator of coordinate ") + names[i] +
                     " is divisible by " + std::to_string(p));
    }
    Integer nr = num % pm;
    if (nr < 0) nr += pm;
    Integer dr = den % pm;
    // Inverse by Fermat over arbitrary precision (p need not be a supported field).
    Integer inv = boost::multiprecision::powm(dr, pm - 2, pm);
    out[i] = Integer((nr * inv) % pm).convert_to<u64>();
  }
  return out;
}

}  // namespace halphen

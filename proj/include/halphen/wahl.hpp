#pragma once

// Gauss-Wahl map of a du Val curve, measured over a prime field.
//
// All routines work in an affine chart z = 1 after a shear x -> x + lambda y
// that puts the assigned singular points on distinct vertical lines and
// makes the curve monic in y.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halphen/cubic.hpp"
#include "halphen/linsys.hpp"

namespace halphen {

struct PlaneCurve {
  PlaneForm<Fp> form;                  // in chart coordinates
  int genus = 0;
  Fp shear;                            // total shear applied to the source plane
  std::vector<Condition<Fp>> singular; // assigned ordinary singular points, chart coordinates
  std::vector<ProjPoint<Fp>> avoid;    // further points kept out of the samples (p10)
};

/// The curve with the extra shear x -> x + lambda y applied (points follow).
PlaneCurve sheared(const PlaneCurve& c, const Fp& lambda);

/// Curve from source-plane data; applies `lambda` to form and points.
PlaneCurve make_curve(const PlaneForm<Fp>& form, int genus, const std::vector<Condition<Fp>>& singular,
                      const std::vector<ProjPoint<Fp>>& avoid, const Fp& lambda);

struct AuditReport {
  bool pass = false;
  std::vector<std::string> failures;
  std::vector<int> exponents;   // x-adic valuation of Res_y(F, F_y) at each singular point
  int residual_degree = -1;     // degree of the stripped resultant
  bool residual_squarefree = false;
  bool infinity_smooth = false;
};

/// Checks the chart invariants, exact ordinary multiplicities at the
/// assigned points, and the absence of further singular points (affine
/// chart by resultant, line at infinity separately).
AuditReport singularity_audit(const PlaneCurve& curve);

/// Seeded random member of the span of `basis`, sheared and audited;
/// resampled up to `retry_budget` times, then RetryExhausted.
PlaneCurve pick_member(const std::vector<PlaneForm<Fp>>& basis, int genus,
                       const std::vector<Condition<Fp>>& singular, const std::vector<ProjPoint<Fp>>& avoid,
                       u64 seed, int retry_budget = 20);

/// General member of the genus-g du Val system of the config, over the
/// active prime.
PlaneCurve pick_duval_member(const PointConfig& config, int g, u64 seed, int retry_budget = 20);

/// Forms of degree d - 3 with multiplicity m - 1 at each singular point.
/// InconsistentGeometry unless there are exactly `genus` of them.
std::vector<PlaneForm<Fp>> adjoint_basis(const PlaneCurve& curve);

/// dim H0(omega^3) by triple adjoints modulo multiples of F; must be
/// 5g - 5 (InconsistentGeometry otherwise).
int omega3_dim(const PlaneCurve& curve);

struct CurveSample {
  Fp x, y;
};

/// N distinct affine points with F_y != 0, none of them assigned.
/// Precondition when N < 6g - 5; BadPrime if the field runs out of points.
std::vector<CurveSample> sample_points(const PlaneCurve& curve, int n, u64 seed);

/// Value of s dt - t ds for s = A dx / F_y, t = B dx / F_y, in units of
/// dx^3, at a sample.
Fp wahl_entry(const PlaneCurve& curve, const PlaneForm<Fp>& a, const PlaneForm<Fp>& b, const CurveSample& s);

/// Rows (i, j), i < j in lexicographic order; one column per sample.
MatrixFp wahl_matrix(const PlaneCurve& curve, const std::vector<PlaneForm<Fp>>& adjoints,
                     const std::vector<CurveSample>& samples);

/// Rank of the Wahl image by symbolic expansion: the polynomials
/// W(A, B) = A (F_y B_x - F_x B_y) - B (F_y A_x - F_x A_y) reduced modulo
/// F in the affine coordinate ring. Independent of sampling; cost grows
/// quickly with the degree.
Index symbolic_wahl_rank(const PlaneCurve& curve, const std::vector<PlaneForm<Fp>>& adjoints);

struct WahlOptions {
  u64 prime = kMersenne61;
  u64 second_prime = kSecondPrime;  // 0 skips the confirmation run
  u64 seed = 1;
  int samples = 0;                  // 0 means 6g + 5
  bool check_omega3 = true;
  bool keep_matrix = false;
};

struct WahlRun {
  u64 prime = 0;
  AuditReport audit;
  int adjoint_dim = 0;
  int samples = 0;
  Index rows = 0, cols = 0, rank = 0;
  int corank = 0;
  std::optional<int> omega3;
  std::map<std::string, double> timings;  // seconds per stage
  std::optional<MatrixFp> matrix;
};

struct WahlReport {
  int genus = 0;
  u64 seed = 0;
  Provenance provenance;
  bool exploratory = false;
  std::string note;
  WahlRun primary;
  std::optional<WahlRun> second;
  bool confirmed = false;  // both primes measured the same rank
};

/// Worker threads for sample evaluation (no-op without OpenMP); n <= 0
/// keeps the default of one per hardware thread.
void set_thread_count(int n);

/// Single-prime pipeline; the prime must be active.
WahlRun wahl_run(const PointConfig& config, int g, u64 seed, int samples, bool check_omega3, bool keep_matrix);

/// Full pipeline at opts.prime, repeated at opts.second_prime.
WahlReport gauss_wahl_corank(const PointConfig& config, int g, const WahlOptions& opts);

}  // namespace halphen

// halphen-lab: command-line front end.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "halphen/acceptance.hpp"
#include "halphen/cache.hpp"
#include "halphen/errors.hpp"
#include "halphen/io.hpp"

using namespace halphen;
using nlohmann::json;

namespace {

struct Globals {
  std::string config;
  u64 prime = kMersenne61;
  u64 second_prime = kSecondPrime;
  u64 seed = 1;
  int order = 0;
  int threads = 0;
  std::string out;
  std::string cache;
  bool timings = false;
};

std::string default_config_path() { return std::string(HALPHEN_DATA_DIR) + "/general_nine_points.json"; }

// Config from --config, or generated from --order/--seed at --prime, or the
// shipped example.
PointConfig resolve_config(const Globals& g, RunManifest& manifest) {
  if (!g.config.empty()) {
    manifest.config = g.config;
    return load_config(g.config);
  }
  if (g.order > 0) {
    manifest.config = "generated(order=" + std::to_string(g.order) + ", seed=" + std::to_string(g.seed) + ")";
    PrimeScope scope(g.prime);
    return gen_halphen_config(g.order, g.seed);
  }
  manifest.config = default_config_path();
  return load_config(manifest.config);
}

RunManifest manifest_for(const std::string& command, const Globals& g) {
  RunManifest m;
  m.command = command;
  m.primes = {g.prime};
  m.seed = g.seed;
  m.out = g.out;
  m.cache = g.cache;
  return m;
}

void emit(const Globals& g, const json& report) {
  if (g.out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    save_json(g.out, report);
  }
}

// Converts failed verifications into exit code 3.
struct MismatchExit {
  std::string what;
};

int cmd_lattice_check(const Globals& g, int s) {
  if (s < 1) throw Usage("--s must be at least 1");
  json rows = json::array();
  bool ok = true;
  for (const auto& r : verify_lattice_identities(s)) {
    rows.push_back(to_json(r));
    ok = ok && r.pass;
  }
  emit(g, json{{"schema", kSchema}, {"manifest", manifest_to_json(manifest_for("lattice-check", g))},
               {"s", s}, {"identities", rows}, {"pass", ok}});
  if (!ok) throw MismatchExit{"lattice identity failed"};
  return 0;
}

int cmd_points_index(const Globals& g, int max_m, int k) {
  RunManifest man = manifest_for("points index", g);
  const PointConfig cfg = resolve_config(g, man);
  PrimeScope scope(g.prime);
  const auto gen = is_k_halphen_general(cfg, k);
  const auto idx = halphen_index(cfg, max_m);
  std::cout << "index: " << (idx ? std::to_string(*idx) : "none (>" + std::to_string(max_m) + ")")
            << "; k-Halphen-general through k=" << k << ": "
            << (gen.general ? "yes" : "no (first failure at h=" + std::to_string(gen.witness) + ")") << '\n';
  if (!g.out.empty()) {
    save_json(g.out, json{{"schema", kSchema},
                          {"manifest", manifest_to_json(man)},
                          {"index", idx ? json(*idx) : json(nullptr)},
                          {"max_m", max_m},
                          {"generality", to_json(gen)}});
  }
  if (!gen.agrees) throw MismatchExit{"group law and interpolation disagree"};
  return 0;
}

int cmd_points_gen(const Globals& g, int order) {
  PrimeScope scope(g.prime);
  const PointConfig cfg = gen_halphen_config(order, g.seed);
  emit(g, config_to_json(cfg));
  return 0;
}

int cmd_linsys_dim(const Globals& g, int degree, const std::vector<int>& mults, int genus) {
  RunManifest man = manifest_for("linsys dim", g);
  const PointConfig cfg = resolve_config(g, man);
  if (mults.size() > 10) throw Usage("at most ten multiplicities (p1..p9, p10)");
  if (mults.size() == 10 && genus < 1) throw Usage("a multiplicity at p10 needs --genus");
  PrimeScope scope(g.prime);
  auto pts = cfg.points_mod_active();
  if (mults.size() == 10) pts.push_back(tenth_point(cfg, genus));
  MultiplicitySpec spec;
  spec.degree = degree;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    if (mults[i] < 0) throw Usage("multiplicities must be non-negative");
    if (mults[i] > 0) spec.conditions.push_back({pts[i], mults[i]});
  }
  const Index dim = degree < 0 ? 0 : system_dimension(spec);
  emit(g, json{{"schema", kSchema},
               {"manifest", manifest_to_json(man)},
               {"degree", degree},
               {"multiplicities", mults},
               {"conditions", spec.rows()},
               {"monomials", spec.cols()},
               {"affine_dim", dim},
               {"projective_dim", dim - 1}});
  return 0;
}

int cmd_verify_props(const Globals& g, int s) {
  RunManifest man = manifest_for("verify-props", g);
  const PointConfig cfg = resolve_config(g, man);
  PrimeScope scope(g.prime);
  const auto calcoli = verify_prop_calcoli(s, cfg);
  const auto prop_a = verify_prop_A(s, cfg);
  json rows = json::array();
  bool ok = prop_a.pass;
  for (const auto& r : calcoli) {
    rows.push_back(to_json(r));
    ok = ok && r.pass;
  }
  emit(g, json{{"schema", kSchema},
               {"manifest", manifest_to_json(man)},
               {"s", s},
               {"cohomology_table", rows},
               {"system_A", to_json(prop_a)},
               {"pass", ok}});
  if (!ok) throw MismatchExit{"proposition table mismatch"};
  return 0;
}

int cmd_wahl_corank(const Globals& g, int genus, int samples, const std::string& emit_matrix, bool skip_omega3) {
  RunManifest man = manifest_for("wahl corank", g);
  if (g.second_prime != 0) man.primes.push_back(g.second_prime);
  const PointConfig cfg = resolve_config(g, man);
  WahlOptions opts;
  opts.prime = g.prime;
  opts.second_prime = g.second_prime;
  opts.seed = g.seed;
  opts.samples = samples;
  opts.check_omega3 = !skip_omega3;
  opts.keep_matrix = !emit_matrix.empty();
  const WahlReport rep = gauss_wahl_corank(cfg, genus, opts);
  if (rep.exploratory) std::cerr << "warning: genus " << genus << " is exploratory (no expected corank)\n";
  if (!emit_matrix.empty()) {
    std::ofstream out(emit_matrix);
    if (!out) throw Usage("cannot write " + emit_matrix);
    write_matrix(out, *rep.primary.matrix);
  }
  json j = to_json(rep, g.timings);
  j["manifest"] = manifest_to_json(man);
  emit(g, j);
  if (rep.second && !rep.confirmed) throw MismatchExit{"ranks differ between the two primes"};
  return 0;
}

int cmd_acceptance(const std::string& mode) {
  const auto results = run_acceptance(mode == "full" ? AcceptanceMode::Full : AcceptanceMode::Fast,
                                      [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; });
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria pass\n";
  if (failed) throw MismatchExit{std::to_string(failed) + " acceptance criteria failed"};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"halphen-lab: Halphen surfaces, du Val curves and Gauss-Wahl coranks over prime fields"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "PointConfig JSON (default: the shipped general nine points)");
  app.add_option("--prime", g.prime, "working prime")->capture_default_str();
  app.add_option("--second-prime", g.second_prime, "confirmation prime (0 to skip)")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for generators and random members")->capture_default_str();
  app.add_option("--order", g.order, "generate an index-M configuration instead of reading --config");
  app.add_option("--threads", g.threads, "worker threads (default: all)");
  app.add_option("--out", g.out, "write the JSON report here instead of stdout");
  app.add_option("--cache", g.cache, "directory for memoized dimension computations");
  app.add_flag("--timings", g.timings, "include per-stage timings in reports");

  int s = 6;
  auto* lattice = app.add_subcommand("lattice-check", "lattice identities for A(s), B(s), C(2s+1)");
  lattice->add_option("--s", s, "s >= 1")->capture_default_str();

  auto* points = app.add_subcommand("points", "point configurations");
  points->require_subcommand(1);
  int max_m = 40, k = 15;
  auto* index = points->add_subcommand("index", "Halphen index and k-Halphen generality");
  index->add_option("--max", max_m, "largest index searched")->capture_default_str();
  index->add_option("--k", k, "generality checked through k")->capture_default_str();
  int gen_order = 7;
  auto* gen = points->add_subcommand("gen", "generate an index-M configuration over --prime");
  gen->add_option("--order,-m", gen_order, "index M")->capture_default_str();

  auto* linsys = app.add_subcommand("linsys", "linear systems with assigned base points");
  linsys->require_subcommand(1);
  int degree = 3, lin_genus = 0;
  std::vector<int> mults;
  auto* dim = linsys->add_subcommand("dim", "affine dimension of a linear system");
  dim->add_option("--degree", degree, "degree")->required();
  dim->add_option("--mults", mults, "multiplicities at p1..p9 (and p10)")->delimiter(',')->required();
  dim->add_option("--genus", lin_genus, "genus selecting p10 when ten multiplicities are given");

  int props_s = 6;
  auto* props = app.add_subcommand("verify-props", "cohomology tables for an index-(s+1) configuration");
  props->add_option("--s", props_s, "s")->capture_default_str();

  auto* wahl = app.add_subcommand("wahl", "Gauss-Wahl map");
  wahl->require_subcommand(1);
  int genus = 13, samples = 0;
  std::string emit_matrix;
  bool skip_omega3 = false;
  auto* corank = wahl->add_subcommand("corank", "corank of the Gauss-Wahl map of a du Val curve");
  corank->add_option("--genus", genus, "genus g >= 3")->capture_default_str();
  corank->add_option("--samples", samples, "sample points (default 6g + 5)");
  corank->add_option("--emit-matrix", emit_matrix, "dump the evaluation matrix (primary prime)");
  corank->add_flag("--skip-omega3", skip_omega3, "skip the dim H0(omega^3) crosscheck");

  std::string mode = "fast";
  auto* acc = app.add_subcommand("acceptance", "run the acceptance suite");
  acc->add_option("mode", mode, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    set_thread_count(g.threads);
    std::unique_ptr<Cache> cache;
    if (!g.cache.empty()) cache = std::make_unique<Cache>(g.cache);
    CacheScope cache_scope(cache.get());
    if (*lattice) return cmd_lattice_check(g, s);
    if (*index) return cmd_points_index(g, max_m, k);
    if (*gen) return cmd_points_gen(g, gen_order);
    if (*dim) return cmd_linsys_dim(g, degree, mults, lin_genus);
    if (*props) return cmd_verify_props(g, props_s);
    if (*corank) return cmd_wahl_corank(g, genus, samples, emit_matrix, skip_omega3);
    if (*acc) return cmd_acceptance(mode);
  } catch (const MismatchExit& e) {
    std::cerr << "mismatch: " << e.what << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

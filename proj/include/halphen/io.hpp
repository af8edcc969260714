#pragma once

// JSON schemas (version 1) for configurations, reports and run manifests.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "halphen/cubic.hpp"
#include "halphen/linsys.hpp"
#include "halphen/picard.hpp"
#include "halphen/wahl.hpp"
#include "json.hpp"

namespace halphen {

inline constexpr int kSchema = 1;

/// {"schema", "field", "points": [[num_x, den_x, num_y, den_y] x 9], "provenance"};
/// integers are decimal strings.
nlohmann::json config_to_json(const PointConfig& c);
/// Accepts integers as strings or JSON numbers. Usage on malformed input.
PointConfig config_from_json(const nlohmann::json& j);

PointConfig load_config(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

struct RunManifest {
  std::string command;
  std::string config;  // path, or "generated(order=M, seed=N)", or "builtin:example"
  std::vector<u64> primes;
  u64 seed = 0;
  std::string out;
  std::string cache;
};

nlohmann::json manifest_to_json(const RunManifest& m);

nlohmann::json to_json(const IdentityCheck& r);
nlohmann::json to_json(const Cohomology& c);
nlohmann::json to_json(const PropRow& r);
nlohmann::json to_json(const PropAResult& r);
nlohmann::json to_json(const GeneralityResult& r);
nlohmann::json to_json(const AuditReport& r);
nlohmann::json to_json(const DivisorClass& d);
/// Timings are omitted unless requested, so reports stay byte-identical.
nlohmann::json to_json(const WahlRun& r, bool timings);
nlohmann::json to_json(const WahlReport& r, bool timings);

/// One row per line, space-separated decimal residues.
void write_matrix(std::ostream& out, const MatrixFp& m);

}  // namespace halphen

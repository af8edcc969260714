#include "halphen/io.hpp"

#include <fstream>
#include <ostream>

#include "halphen/errors.hpp"

namespace halphen {

namespace {

using nlohmann::json;

Integer parse_integer(const json& v, const char* what) {
  try {
    if (v.is_string()) return Integer(v.get<std::string>());
    if (v.is_number_integer()) return Integer(v.get<long long>());
  } catch (const std::exception&) {
  }
  throw Usage(std::string("malformed integer in ") + what + ": " + v.dump());
}

std::string str(const Integer& z) { return z.str(); }

json provenance_to_json(const Provenance& p) {
  json j{{"kind", p.kind}};
  if (p.kind == "generated") {
    j["order"] = p.order;
    j["seed"] = std::to_string(p.seed);
    j["model"] = p.model;
    j["param"] = p.param;
  }
  return j;
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  p.kind = j.value("kind", "explicit");
  if (p.kind == "generated") {
    p.order = j.at("order").get<int>();
    p.seed = static_cast<u64>(std::stoull(parse_integer(j.at("seed"), "provenance seed").str()));
    p.model = j.value("model", "");
    p.param = j.value("param", "");
  } else if (p.kind != "explicit") {
    throw Usage("unknown provenance kind '" + p.kind + "'");
  }
  return p;
}

}  // namespace

json config_to_json(const PointConfig& c) {
  json field = c.field == FieldKind::Rational ? json{{"kind", "rational"}}
                                              : json{{"kind", "prime"}, {"p", std::to_string(c.p)}};
  json pts = json::array();
  for (const auto& pt : c.points) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    pts.push_back({str(numerator(pt[0])), str(denominator(pt[0])), str(numerator(pt[1])), str(denominator(pt[1]))});
  }
  return json{{"schema", kSchema}, {"field", field}, {"points", pts}, {"provenance", provenance_to_json(c.provenance)}};
}

PointConfig config_from_json(const json& j) {
  try {
    if (j.value("schema", kSchema) != kSchema) throw Usage("unsupported config schema " + j.at("schema").dump());
    PointConfig c;
    const json& f = j.at("field");
    const std::string kind = f.at("kind").get<std::string>();
    if (kind == "rational") {
      c.field = FieldKind::Rational;
    } else if (kind == "prime") {
      c.field = FieldKind::Prime;
      c.p = static_cast<u64>(std::stoull(parse_integer(f.at("p"), "field modulus").str()));
    } else {
      throw Usage("unknown field kind '" + kind + "'");
    }
    for (const json& row : j.at("points")) {
      if (!row.is_array() || row.size() != 4) throw Usage("each point is [num_x, den_x, num_y, den_y]");
      const Integer nx = parse_integer(row[0], "point"), dx = parse_integer(row[1], "point");
      const Integer ny = parse_integer(row[2], "point"), dy = parse_integer(row[3], "point");
      if (dx == 0 || dy == 0) throw Usage("zero denominator in point " + row.dump());
      c.points.push_back({Rational(nx, dx), Rational(ny, dy)});
    }
    if (j.contains("provenance")) c.provenance = provenance_from_json(j.at("provenance"));
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw Usage(std::string("malformed configuration: ") + e.what());
  }
}

PointConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Usage("cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Usage(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Usage("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json manifest_to_json(const RunManifest& m) {
  json primes = json::array();
  for (u64 p : m.primes) primes.push_back(std::to_string(p));
  return json{{"command", m.command}, {"config", m.config}, {"primes", primes},
              {"seed", std::to_string(m.seed)}, {"out", m.out}, {"cache", m.cache}};
}

json to_json(const IdentityCheck& r) {
  return json{{"identity", r.identity}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}};
}

json to_json(const Cohomology& c) { return json::array({c.h0, c.h1, c.h2}); }

json to_json(const PropRow& r) {
  return json{{"divisor", r.divisor}, {"expected", to_json(r.expected)}, {"computed", to_json(r.computed)},
              {"pass", r.pass}};
}

json to_json(const PropAResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  return json{{"rows", rows},
              {"base_points",
               {{"found", r.base_points.base_point_found},
                {"local_exponents", r.base_points.local_exponents},
                {"detail", r.base_points.detail},
                {"method", "probabilistic"}}},
              {"quadrics", {{"expected", r.quadrics_expected}, {"computed", r.quadrics_computed}}},
              {"pass", r.pass}};
}

json to_json(const GeneralityResult& r) {
  json dims = json::array();
  for (Index d : r.dims) dims.push_back(d);
  return json{{"general", r.general},
              {"witness", r.witness == 0 ? json(nullptr) : json(r.witness)},
              {"dims", dims},
              {"index", r.index ? json(*r.index) : json(nullptr)},
              {"agrees", r.agrees}};
}

json to_json(const AuditReport& r) {
  return json{{"pass", r.pass},
              {"failures", r.failures},
              {"resultant_exponents", r.exponents},
              {"residual_degree", r.residual_degree},
              {"residual_squarefree", r.residual_squarefree},
              {"infinity_smooth", r.infinity_smooth}};
}

json to_json(const DivisorClass& d) {
  json m = json::array();
  for (int i = 0; i < d.n_points; ++i) m.push_back(d.m[static_cast<std::size_t>(i)]);
  return json{{"d", d.d}, {"m", m}, {"text", to_string(d)}};
}

json to_json(const WahlRun& r, bool timings) {
  json j{{"prime", std::to_string(r.prime)},
         {"audit", to_json(r.audit)},
         {"adjoint_dim", r.adjoint_dim},
         {"samples", r.samples},
         {"matrix_shape", {r.rows, r.cols}},
         {"rank", r.rank},
         {"corank", r.corank},
         {"omega3_dim", r.omega3 ? json(*r.omega3) : json("skipped")}};
  if (timings) j["timings"] = r.timings;
  return j;
}

json to_json(const WahlReport& r, bool timings) {
  return json{{"schema", kSchema},
              {"genus", r.genus},
              {"seed", std::to_string(r.seed)},
              {"provenance", provenance_to_json(r.provenance)},
              {"exploratory", r.exploratory},
              {"note", r.note},
              {"primary", to_json(r.primary, timings)},
              {"second", r.second ? to_json(*r.second, timings) : json(nullptr)},
              {"confirmed", r.confirmed}};
}

void write_matrix(std::ostream& out, const MatrixFp& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).value();
    }
    out << '\n';
  }
}

}  // namespace halphen

// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/serialize.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "core/config.hpp"
#include "core/error.hpp"
#include "json.hpp"

namespace linrelu {

namespace {

using Json = nlohmann::ordered_json;

// nlohmann prints doubles with max_digits10 already; round trips are exact.
Json matrix_rows(const PointMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

PointMatrix matrix_from(const Json& rows, int cols) {
  require(rows.is_array(), ErrorKind::Io, "points must be an array");
  PointMatrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& row = rows[i];
    require(row.is_array() && row.size() == static_cast<std::size_t>(cols), ErrorKind::Io,
            "point row has the wrong length");
    for (int j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::Io, std::string("malformed JSON: ") + e.what());
  }
}

Json pointset_json(const PointSet& ps) {
  Json j;
  j["d"] = ps.dim();
  j["strategy"] = ps.strategy();
  j["seed"] = ps.seed();
  j["resolution"] = ps.resolution();
  j["h"] = ps.mesh_norm();
  j["h_sep"] = ps.separation();
  j["points"] = matrix_rows(ps.points());
  return j;
}

PointSet pointset_from(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    require(d >= 1, ErrorKind::Io, "d must be >= 1");
    return PointSet(d, matrix_from(j.at("points"), d + 1), j.at("strategy").get<std::string>(),
                    j.at("seed").get<std::uint64_t>(), j.at("h").get<double>(), j.at("h_sep").get<double>(),
                    j.at("resolution").get<double>());
  } catch (const Json::exception& e) {
    fail(ErrorKind::Io, std::string("bad point set document: ") + e.what());
  }
}

}  // namespace

std::string points_hash(const PointSet& ps) {
  const auto& p = ps.points();
  std::string bytes(static_cast<std::size_t>(p.size()) * sizeof(double), '\0');
  std::memcpy(bytes.data(), p.data(), bytes.size());
  return hex64(fnv1a64(bytes));
}

std::string pointset_to_json(const PointSet& ps) { return pointset_json(ps).dump(1) + "\n"; }

PointSet pointset_from_json(const std::string& text) { return pointset_from(parse(text)); }

std::string rule_to_json(const QuadratureRule& rule) {
  Json j;
  j["D"] = rule.exact_degree;
  j["J"] = rule.projection_degree;
  j["tol"] = rule.tol;
  j["residual"] = rule.residual;
  j["weight_constant"] = rule.weight_constant;
  j["points_hash"] = points_hash(rule.points);
  j["weights"] = std::vector<double>(rule.weights.data(), rule.weights.data() + rule.weights.size());
  return j.dump(1) + "\n";
}

std::string model_to_json(const FiniteNeuronModel& model) {
  Json j;
  j["d"] = model.dim();
  j["k"] = model.power();
  j["domain"] = model.domain() == Domain::Ball ? "ball" : "sphere";
  j["M"] = model.norm_cap();
  j["points_ref"] = points_hash(model.directions());
  j["directions"] = pointset_json(model.directions());
  const auto& a = model.coefficients();
  j["a"] = std::vector<double>(a.data(), a.data() + a.size());
  return j.dump(1) + "\n";
}

FiniteNeuronModel model_from_json(const std::string& text) {
  const Json j = parse(text);
  try {
    PointSet ps = pointset_from(j.at("directions"));
    require(points_hash(ps) == j.at("points_ref").get<std::string>(), ErrorKind::Io,
            "model points_ref does not match its directions");
    const auto a = j.at("a").get<std::vector<double>>();
    require(a.size() == static_cast<std::size_t>(ps.size()), ErrorKind::Io, "coefficient count mismatch");
    const std::string domain = j.at("domain").get<std::string>();
    require(domain == "ball" || domain == "sphere", ErrorKind::Io, "unknown domain '" + domain + "'");
    return FiniteNeuronModel(j.at("k").get<int>(), domain == "ball" ? Domain::Ball : Domain::Sphere,
                             std::move(ps), Eigen::Map<const Eigen::VectorXd>(a.data(), Eigen::Index(a.size())),
                             j.at("M").get<double>());
  } catch (const Json::exception& e) {
    fail(ErrorKind::Io, std::string("bad model document: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  require(static_cast<bool>(out), ErrorKind::Io, "write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace linrelu

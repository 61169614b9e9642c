#include "fbf/params.hpp"

#include <string>

namespace fbf::params {
namespace {

const nlohmann::json& lookup(const Params& p, std::string_view key) {
  if (!p.is_object() || !p.contains(std::string(key))) {
    throw ConstructionError("missing parameter '" + std::string(key) + "'");
  }
  return p.at(std::string(key));
}

double as_number(const nlohmann::json& j, std::string_view key) {
  if (!j.is_number()) {
    throw ConstructionError("parameter '" + std::string(key) + "' must be a number");
  }
  return j.get<double>();
}

Vector as_vector(const nlohmann::json& j, std::string_view key) {
  if (!j.is_array()) {
    throw ConstructionError("parameter '" + std::string(key) + "' must be an array");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = as_number(j[i], key);
  }
  return v;
}

}  // namespace

bool has(const Params& p, std::string_view key) {
  return p.is_object() && p.contains(std::string(key));
}

double number(const Params& p, std::string_view key) { return as_number(lookup(p, key), key); }

double number(const Params& p, std::string_view key, double fallback) {
  return has(p, key) ? number(p, key) : fallback;
}

long long integer(const Params& p, std::string_view key, long long fallback) {
  if (!has(p, key)) {
    return fallback;
  }
  const auto& j = lookup(p, key);
  if (!j.is_number_integer()) {
    throw ConstructionError("parameter '" + std::string(key) + "' must be an integer");
  }
  return j.get<long long>();
}

Vector vector(const Params& p, std::string_view key) { return as_vector(lookup(p, key), key); }

std::optional<Vector> optional_vector(const Params& p, std::string_view key) {
  if (!has(p, key)) {
    return std::nullopt;
  }
  return vector(p, key);
}

Vector scalar_or_vector(const Params& p, std::string_view key, Eigen::Index n) {
  const auto& j = lookup(p, key);
  if (j.is_number()) {
    return Vector::Constant(n, j.get<double>());
  }
  Vector v = as_vector(j, key);
  if (v.size() != n) {
    throw ConstructionError("parameter '" + std::string(key) + "' must have length " +
                            std::to_string(n));
  }
  return v;
}

Matrix matrix(const Params& p, std::string_view key) {
  const auto& j = lookup(p, key);
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw ConstructionError("parameter '" + std::string(key) + "' must be an array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Vector row = as_vector(j[static_cast<std::size_t>(r)], key);
    if (row.size() != cols) {
      throw ConstructionError("parameter '" + std::string(key) + "' has ragged rows");
    }
    m.row(r) = row.transpose();
  }
  return m;
}

nlohmann::json to_json(const Vector& v) {
  auto j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    j.push_back(v[i]);
  }
  return j;
}

nlohmann::json to_json(const Matrix& m) {
  auto j = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    j.push_back(to_json(Vector(m.row(r).transpose())));
  }
  return j;
}

}  // namespace fbf::params

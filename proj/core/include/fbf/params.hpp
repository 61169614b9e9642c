#pragma once

#include "fbf/types.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string_view>

namespace fbf {

/// Key/value parameters for catalog constructors (operators, schedules,
/// problems). Scalars are numbers, vectors are flat arrays, matrices are
/// arrays of rows.
using Params = nlohmann::json;

namespace params {

bool has(const Params& p, std::string_view key);

/// Throws ConstructionError naming `key` when absent or not numeric.
double number(const Params& p, std::string_view key);
double number(const Params& p, std::string_view key, double fallback);

long long integer(const Params& p, std::string_view key, long long fallback);

Vector vector(const Params& p, std::string_view key);
std::optional<Vector> optional_vector(const Params& p, std::string_view key);

/// Accepts either a number (broadcast to `n`) or an array of length `n`.
Vector scalar_or_vector(const Params& p, std::string_view key, Eigen::Index n);

Matrix matrix(const Params& p, std::string_view key);

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);

}  // namespace params
}  // namespace fbf

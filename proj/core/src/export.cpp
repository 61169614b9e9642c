#include "fbf/export.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace fbf {
namespace {

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double parse_double(const std::string& s) {
  double v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    if (s == "inf") {
      return INFINITY;
    }
    if (s == "-inf") {
      return -INFINITY;
    }
    if (s == "nan") {
      return NAN;
    }
    throw RecordError("malformed CSV number '" + s + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  return parse_double(s);
}

template <typename Row>
void read_rows(std::istream& is, const std::string& expected_header, Row&& row) {
  std::string line;
  if (!std::getline(is, line) || line != expected_header) {
    throw RecordError("unexpected CSV header, wanted '" + expected_header + "'");
  }
  while (std::getline(is, line)) {
    if (line.empty()) {
      continue;
    }
    const auto fields = split_row(line);
    if (fields.size() != 5) {
      throw RecordError("CSV row has " + std::to_string(fields.size()) + " fields, expected 5");
    }
    row(fields);
  }
}

constexpr const char* kTrajectoryHeader = "t,residual,dist_to_solution,objective_at_z,gamma";
constexpr const char* kIterateHeader = "n,residual,dist_to_solution,objective_at_z,gamma";

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record) {
  os << kTrajectoryHeader << '\n';
  for (const auto& s : record.samples) {
    os << format_double(s.t) << ',' << format_double(s.residual) << ','
       << optional_field(s.dist_to_solution) << ',' << optional_field(s.objective_at_z) << ','
       << format_double(s.gamma) << '\n';
  }
}

TrajectoryRecord read_trajectory_csv(std::istream& is) {
  TrajectoryRecord record;
  read_rows(is, kTrajectoryHeader, [&](const std::vector<std::string>& f) {
    TrajectorySample s;
    s.t = parse_double(f[0]);
    s.residual = parse_double(f[1]);
    s.dist_to_solution = parse_optional(f[2]);
    s.objective_at_z = parse_optional(f[3]);
    s.gamma = parse_double(f[4]);
    if (!record.samples.empty() && !(s.t > record.samples.back().t)) {
      throw RecordError("CSV sample times must be strictly increasing");
    }
    record.samples.push_back(std::move(s));
  });
  return record;
}

void write_iterates_csv(std::ostream& os, const IterateRecord& record) {
  os << kIterateHeader << '\n';
  for (const auto& it : record.iterates) {
    os << it.n << ',' << format_double(it.residual) << ',' << optional_field(it.dist_to_solution)
       << ',' << optional_field(it.objective_at_z) << ',' << format_double(it.gamma) << '\n';
  }
}

IterateRecord read_iterates_csv(std::istream& is) {
  IterateRecord record;
  read_rows(is, kIterateHeader, [&](const std::vector<std::string>& f) {
    Iterate it;
    it.n = static_cast<std::size_t>(parse_double(f[0]));
    it.residual = parse_double(f[1]);
    it.dist_to_solution = parse_optional(f[2]);
    it.objective_at_z = parse_optional(f[3]);
    it.gamma = parse_double(f[4]);
    record.ergodic_den += it.gamma;
    it.gamma_sum = record.ergodic_den;
    record.iterates.push_back(std::move(it));
  });
  return record;
}

void write_envelope_csv(std::ostream& os, const EnvelopeReport& report) {
  os << "t,measured,envelope\n";
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    os << format_double(report.times[k]) << ',' << format_double(report.measured[k]) << ','
       << format_double(report.envelope[k]) << '\n';
  }
}

nlohmann::ordered_json vector_json(const Vector& v) {
  auto j = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    j.push_back(v[i]);
  }
  return j;
}

nlohmann::ordered_json to_json(const MonitorVerdict& verdict) {
  nlohmann::ordered_json j;
  j["name"] = verdict.name;
  j["status"] = !verdict.applicable ? "inapplicable" : (verdict.holds ? "holds" : "violated");
  j["holds"] = verdict.holds;
  j["applicable"] = verdict.applicable;
  j["worst_margin"] = std::isfinite(verdict.worst_margin) ? nlohmann::ordered_json(verdict.worst_margin)
                                                          : nlohmann::ordered_json(nullptr);
  j["location"] = verdict.location;
  if (verdict.value) {
    j["value"] = *verdict.value;
  }
  j["detail"] = verdict.detail;
  return j;
}

}  // namespace fbf

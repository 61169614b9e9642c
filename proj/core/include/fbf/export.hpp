#pragma once

#include "fbf/diagnostics.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace fbf {

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Columns: t,residual,dist_to_solution,objective_at_z,gamma. Absent
/// optional values are written as empty fields.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record);
/// Reads the columns above back; samples carry no x/z states.
TrajectoryRecord read_trajectory_csv(std::istream& is);

/// Columns: n,residual,dist_to_solution,objective_at_z,gamma.
void write_iterates_csv(std::ostream& os, const IterateRecord& record);
IterateRecord read_iterates_csv(std::istream& is);

/// Columns: t,measured,envelope.
void write_envelope_csv(std::ostream& os, const EnvelopeReport& report);

nlohmann::ordered_json to_json(const MonitorVerdict& verdict);
nlohmann::ordered_json vector_json(const Vector& v);

}  // namespace fbf

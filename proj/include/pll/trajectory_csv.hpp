#pragma once

// CSV exchange format for two-component trajectories:
//
//     t,x,theta,g        (phase model)
//     t,x,theta2,g       (circuit model)
//
// one row per accepted step, doubles in shortest round-trip decimal form.

#include "pll/integrator.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace pll {

using Trajectory2 = Trajectory<2>;

enum class CsvModel { Phase, Circuit };

[[nodiscard]] std::string_view csv_header(CsvModel model) noexcept;

/// Shortest decimal string that parses back to exactly `v`.
[[nodiscard]] std::string format_double(double v);

void write_csv(std::ostream& os, const Trajectory2& traj, CsvModel model = CsvModel::Phase);
void write_csv_file(const std::string& path, const Trajectory2& traj, CsvModel model = CsvModel::Phase);

struct CsvTrajectory {
    CsvModel model = CsvModel::Phase;
    Trajectory2 trajectory;
};

/// Parses a trajectory CSV. Throws ParseError on a bad header, a row with
/// the wrong field count, a non-numeric field, or non-increasing t.
[[nodiscard]] CsvTrajectory read_csv(std::istream& is);
[[nodiscard]] CsvTrajectory read_csv_file(const std::string& path);

}  // namespace pll

#pragma once

#include "pll/equilibria.hpp"
#include "pll/trajectory_csv.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pll {

struct PortraitMarkers {
    std::vector<Equilibrium> equilibria;
    std::optional<Vec2> boundary;     ///< (x, theta) of the bisected boundary point
    std::optional<Vec2> cycle_point;  ///< (x, theta) of the stable-cycle fixed point
};

enum class PlotKind { Portrait, FilterOutput };

/// Deterministic SVG: fixed 800x600 viewBox, framed axes with min/max tick
/// labels, one <polyline> per trajectory. Portrait plots (theta_delta, x)
/// with one <circle> per marker; FilterOutput plots g(t).
/// Coordinates are printed with two decimals, so equal inputs give equal bytes.
[[nodiscard]] std::string render_svg(const std::vector<Trajectory2>& trajectories,
                                     PlotKind kind = PlotKind::Portrait,
                                     const PortraitMarkers& markers = {});

}  // namespace pll

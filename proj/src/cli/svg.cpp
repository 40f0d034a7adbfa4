#include "pll/svg.hpp"

#include "pll/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pll {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    void finish() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        double span = hi - lo;
        if (span <= 0.0) span = std::max(std::abs(lo), 1.0) * 1e-3;
        lo -= 0.05 * span;
        hi += 0.05 * span;
    }
};

}  // namespace

std::string render_svg(const std::vector<Trajectory2>& trajectories, PlotKind kind,
                       const PortraitMarkers& markers) {
    if (trajectories.empty()) throw DomainError("nothing to render");

    // Horizontal/vertical data coordinates for a sample.
    const auto hx = [&](const Sample<2>& s) { return kind == PlotKind::Portrait ? s.y[1] : s.t; };
    const auto vy = [&](const Sample<2>& s) { return kind == PlotKind::Portrait ? s.y[0] : s.g; };

    Range rx;
    Range ry;
    for (const auto& tr : trajectories) {
        for (const auto& s : tr.samples) {
            rx.add(hx(s));
            ry.add(vy(s));
        }
    }
    if (kind == PlotKind::Portrait) {
        for (const auto& e : markers.equilibria) {
            rx.add(e.theta_eq);
            ry.add(e.x_eq);
        }
        for (const auto& m : {markers.boundary, markers.cycle_point}) {
            if (m) {
                rx.add((*m)[1]);
                ry.add((*m)[0]);
            }
        }
    }
    rx.finish();
    ry.finish();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double v) { return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    const auto py = [&](double v) { return kTop + (ry.hi - v) / (ry.hi - ry.lo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n";
    os << "<rect class=\"frame\" x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
       << fmt(pw) << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    const char* xname = kind == PlotKind::Portrait ? "theta_delta (rad)" : "t (s)";
    const char* yname = kind == PlotKind::Portrait ? "x" : "g";
    os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<text x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kHeight - kBottom + 16) << "\">"
       << label(rx.lo) << "</text>\n";
    os << "<text x=\"" << fmt(kWidth - kRight) << "\" y=\"" << fmt(kHeight - kBottom + 16)
       << "\" text-anchor=\"end\">" << label(rx.hi) << "</text>\n";
    os << "<text x=\"" << fmt(kLeft - 4) << "\" y=\"" << fmt(kHeight - kBottom)
       << "\" text-anchor=\"end\">" << label(ry.lo) << "</text>\n";
    os << "<text x=\"" << fmt(kLeft - 4) << "\" y=\"" << fmt(kTop + 10) << "\" text-anchor=\"end\">"
       << label(ry.hi) << "</text>\n";
    os << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 16)
       << "\" text-anchor=\"middle\">" << xname << "</text>\n";
    os << "<text x=\"16\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << fmt(kTop + ph / 2) << ")\">" << yname << "</text>\n";
    os << "</g>\n";

    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        os << "<polyline fill=\"none\" stroke=\"" << kPalette[i % kPalette.size()]
           << "\" stroke-width=\"1\" points=\"";
        bool first = true;
        for (const auto& s : trajectories[i].samples) {
            if (!std::isfinite(hx(s)) || !std::isfinite(vy(s))) continue;
            if (!first) os << ' ';
            os << fmt(px(hx(s))) << ',' << fmt(py(vy(s)));
            first = false;
        }
        os << "\"/>\n";
    }

    if (kind == PlotKind::Portrait) {
        for (const auto& e : markers.equilibria) {
            const bool stable = e.stability == Stability::Stable;
            os << "<circle class=\"equilibrium " << (stable ? "stable" : "unstable") << "\" cx=\""
               << fmt(px(e.theta_eq)) << "\" cy=\"" << fmt(py(e.x_eq)) << "\" r=\"5\" fill=\""
               << (stable ? "black" : "white") << "\" stroke=\"black\"/>\n";
        }
        if (markers.cycle_point) {
            os << "<circle class=\"cycle\" cx=\"" << fmt(px((*markers.cycle_point)[1])) << "\" cy=\""
               << fmt(py((*markers.cycle_point)[0])) << "\" r=\"4\" fill=\"#2ca02c\"/>\n";
        }
        if (markers.boundary) {
            os << "<circle class=\"boundary\" cx=\"" << fmt(px((*markers.boundary)[1])) << "\" cy=\""
               << fmt(py((*markers.boundary)[0])) << "\" r=\"4\" fill=\"#d62728\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace pll

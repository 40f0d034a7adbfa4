#include "pll/trajectory_csv.hpp"

#include "pll/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace pll {

std::string_view csv_header(CsvModel model) noexcept {
    return model == CsvModel::Phase ? "t,x,theta,g" : "t,x,theta2,g";
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("failed to format double");
    return std::string(buf.data(), end);
}

void write_csv(std::ostream& os, const Trajectory2& traj, CsvModel model) {
    os << csv_header(model) << '\n';
    for (const auto& s : traj.samples) {
        os << format_double(s.t) << ',' << format_double(s.y[0]) << ',' << format_double(s.y[1])
           << ',' << format_double(s.g) << '\n';
    }
}

void write_csv_file(const std::string& path, const Trajectory2& traj, CsvModel model) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_csv(os, traj, model);
    if (!os) throw Error("write to '" + path + "' failed");
}

namespace {

double parse_field(std::string_view field, std::size_t line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

CsvTrajectory read_csv(std::istream& is) {
    CsvTrajectory out;
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty trajectory CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == csv_header(CsvModel::Phase)) {
        out.model = CsvModel::Phase;
    } else if (line == csv_header(CsvModel::Circuit)) {
        out.model = CsvModel::Circuit;
    } else {
        throw ParseError("unrecognized CSV header '" + line + "'");
    }

    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 4> v{};
        std::size_t field = 0;
        std::size_t start = 0;
        const std::string_view sv(line);
        while (true) {
            const std::size_t comma = sv.find(',', start);
            const std::string_view tok = sv.substr(start, comma == std::string_view::npos ? sv.npos : comma - start);
            if (field >= v.size()) throw ParseError("line " + std::to_string(line_no) + ": too many fields");
            v[field++] = parse_field(tok, line_no);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (field != v.size()) throw ParseError("line " + std::to_string(line_no) + ": expected 4 fields");
        auto& samples = out.trajectory.samples;
        if (!samples.empty() && !(v[0] > samples.back().t)) {
            throw ParseError("line " + std::to_string(line_no) + ": t is not strictly increasing");
        }
        samples.push_back({v[0], {v[1], v[2]}, v[3]});
    }
    if (out.trajectory.samples.empty()) throw ParseError("trajectory CSV has no rows");
    return out;
}

CsvTrajectory read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open '" + path + "'");
    return read_csv(is);
}

}  // namespace pll

#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vcell/geometry.hpp"

namespace vcell::cli {

/// Unreadable or malformed input file; the message names the file and record.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One point per line as `x,y`; blank lines and lines starting with `#` are
/// skipped. Files ending in `.json` are read as an array of [x, y] pairs.
std::vector<Point> read_points(const std::filesystem::path& path);
std::vector<Point> parse_points_text(std::string_view text, std::string_view source);
std::vector<Point> parse_points_json(std::string_view text, std::string_view source);

/// 17 significant digits; parses back to the same double.
std::string format_real(double value);

void write_file(const std::filesystem::path& path, std::string_view contents);

class SvgCanvas {
public:
    /// Scene bounds in model units; 100 pixels per unit, y pointing up.
    SvgCanvas(Point lower, Point upper);

    void disk(Point center, double radius, std::string_view style);
    void polygon(std::span<const Point> vertices, std::string_view style);
    void segment(Point a, Point b, std::string_view style);
    void dot(Point p, std::string_view style);

    std::string str() const;

private:
    Point lower_;
    Point upper_;
    std::string body_;
};

inline constexpr std::string_view kDiskStyle = "fill:none;stroke:#888888;stroke-width:1";
inline constexpr std::string_view kCellStyle = "fill:none;stroke:#1f4e9c;stroke-width:2";
inline constexpr std::string_view kWedgeStyle =
    "fill:#f2a541;fill-opacity:0.25;stroke:#c46a00;stroke-width:1;stroke-dasharray:4 2";
inline constexpr std::string_view kSiteStyle = "fill:#000000";
inline constexpr std::string_view kHighlightStyle = "fill:#c0392b";

}  // namespace vcell::cli

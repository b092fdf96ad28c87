#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace vcell::cli {

namespace {

constexpr double kPixelsPerUnit = 100.0;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_real(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::vector<Point> parse_points_text(std::string_view text, std::string_view source) {
    std::vector<Point> points;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto end = text.find('\n');
        const std::string_view raw = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        Point p;
        if (comma == std::string_view::npos || !parse_real(line.substr(0, comma), p.x) ||
            !parse_real(line.substr(comma + 1), p.y)) {
            throw InputError(fmt::format("{}:{}: expected `x,y`, got `{}`", source, line_no, line));
        }
        if (!is_finite(p)) {
            throw InputError(fmt::format("{}:{}: non-finite coordinate", source, line_no));
        }
        points.push_back(p);
    }
    return points;
}

std::vector<Point> parse_points_json(std::string_view text, std::string_view source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(fmt::format("{}: {}", source, e.what()));
    }
    if (!doc.is_array()) throw InputError(fmt::format("{}: expected an array of [x, y] pairs", source));
    std::vector<Point> points;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw InputError(fmt::format("{}: entry {} is not a pair of numbers", source, i));
        }
        const Point p{item[0].get<double>(), item[1].get<double>()};
        if (!is_finite(p)) throw InputError(fmt::format("{}: entry {} is not finite", source, i));
        points.push_back(p);
    }
    return points;
}

std::vector<Point> read_points(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(fmt::format("{}: cannot open file", path.string()));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    if (path.extension() == ".json") return parse_points_json(text, path.string());
    return parse_points_text(text, path.string());
}

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(fmt::format("{}: cannot write file", path.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw InputError(fmt::format("{}: write failed", path.string()));
}

SvgCanvas::SvgCanvas(Point lower, Point upper) : lower_(lower), upper_(upper) {}

namespace {

std::string px(double v) { return fmt::format("{:.3f}", v * kPixelsPerUnit); }

}  // namespace

void SvgCanvas::disk(Point center, double radius, std::string_view style) {
    body_ += fmt::format("  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" style=\"{}\"/>\n", px(center.x),
                         px(-center.y), px(radius), style);
}

void SvgCanvas::polygon(std::span<const Point> vertices, std::string_view style) {
    std::string pts;
    for (const Point& p : vertices) {
        if (!pts.empty()) pts += ' ';
        pts += px(p.x) + ',' + px(-p.y);
    }
    body_ += fmt::format("  <polygon points=\"{}\" style=\"{}\"/>\n", pts, style);
}

void SvgCanvas::segment(Point a, Point b, std::string_view style) {
    body_ += fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" style=\"{}\"/>\n",
                         px(a.x), px(-a.y), px(b.x), px(-b.y), style);
}

void SvgCanvas::dot(Point p, std::string_view style) { disk(p, 0.04, style); }

std::string SvgCanvas::str() const {
    const double w = upper_.x - lower_.x;
    const double h = upper_.y - lower_.y;
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"{2} {3} {0} {1}\">\n{4}</svg>\n",
        px(w), px(h), px(lower_.x), px(-upper_.y), body_);
}

}  // namespace vcell::cli

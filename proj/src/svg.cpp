#include "secondary/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace secondary {

namespace {

double approx(const Rational& r) { return r.convert_to<double>(); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct Frame {
    double minX, minY, maxX, maxY;  // world box with margin
    double scale, width, height;

    static Frame fit(const std::vector<std::pair<double, double>>& pts) {
        Frame f{};
        f.minX = f.minY = 1e300;
        f.maxX = f.maxY = -1e300;
        for (const auto& [x, y] : pts) {
            f.minX = std::min(f.minX, x);
            f.maxX = std::max(f.maxX, x);
            f.minY = std::min(f.minY, y);
            f.maxY = std::max(f.maxY, y);
        }
        const double margin = 0.1 * std::max({f.maxX - f.minX, f.maxY - f.minY, 1.0});
        f.minX -= margin;
        f.minY -= margin;
        f.maxX += margin;
        f.maxY += margin;
        f.scale = 480.0 / std::max(f.maxX - f.minX, f.maxY - f.minY);
        f.width = (f.maxX - f.minX) * f.scale;
        f.height = (f.maxY - f.minY) * f.scale;
        return f;
    }

    // SVG y grows downward; flip so the drawing matches plane orientation.
    std::pair<double, double> map(double x, double y) const {
        return {(x - minX) * scale, (maxY - y) * scale};
    }
    std::pair<double, double> map(const Point& p) const { return map(approx(p.x), approx(p.y)); }
};

void open_svg(std::string& out, const Frame& f) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(f.width) + "\" height=\"" +
           fmt(f.height) + "\" viewBox=\"0 0 " + fmt(f.width) + " " + fmt(f.height) + "\">\n";
}

void line(std::string& out, std::pair<double, double> a, std::pair<double, double> b,
          const char* style) {
    out += "  <line x1=\"" + fmt(a.first) + "\" y1=\"" + fmt(a.second) + "\" x2=\"" +
           fmt(b.first) + "\" y2=\"" + fmt(b.second) + "\" " + style + "/>\n";
}

void circle(std::string& out, std::pair<double, double> c, double r, const char* style) {
    out += "  <circle cx=\"" + fmt(c.first) + "\" cy=\"" + fmt(c.second) + "\" r=\"" + fmt(r) +
           "\" " + style + "/>\n";
}

void text(std::string& out, std::pair<double, double> at, const std::string& s) {
    out += "  <text x=\"" + fmt(at.first + 6.0) + "\" y=\"" + fmt(at.second - 6.0) +
           "\" font-size=\"14\" font-family=\"monospace\">" + s + "</text>\n";
}

}  // namespace

std::string render_subdivision_svg(const Configuration& config, const Subdivision& d) {
    std::vector<std::pair<double, double>> pts;
    for (const Point& p : config.points) pts.push_back({approx(p.x), approx(p.y)});
    const Frame f = Frame::fit(pts);

    std::string out;
    open_svg(out, f);
    for (const Cell& cell : d.cells) {
        out += "  <polygon points=\"";
        for (size_t i = 0; i < cell.vertices.size(); ++i) {
            auto [x, y] = f.map(config[cell.vertices[i]]);
            if (i) out += ' ';
            out += fmt(x) + "," + fmt(y);
        }
        out += "\" fill=\"#dce9f6\" stroke=\"#30506e\" stroke-width=\"1\"/>\n";
    }
    for (const Wall& w : d.walls)
        line(out, f.map(config[w.first]), f.map(config[w.second]),
             "stroke=\"#b03030\" stroke-width=\"2.5\"");
    for (int i = 0; i < config.size(); ++i) {
        auto c = f.map(config[i]);
        circle(out, c, 3.5, "fill=\"#1d2f40\"");
        text(out, c, std::to_string(i));
    }
    for (int u : d.unused) {
        auto c = f.map(config[u]);
        line(out, {c.first - 6, c.second - 6}, {c.first + 6, c.second + 6},
             "stroke=\"#b03030\" stroke-width=\"1.5\"");
        line(out, {c.first - 6, c.second + 6}, {c.first + 6, c.second - 6},
             "stroke=\"#b03030\" stroke-width=\"1.5\"");
    }
    out += "</svg>\n";
    return out;
}

std::string render_fan_svg(const AffineFan& fan) {
    std::vector<std::pair<double, double>> pts;
    for (const Point& v : fan.vertices) pts.push_back({approx(v.x), approx(v.y)});
    double span = 1.0;
    for (const auto& [x, y] : pts)
        for (const auto& [x2, y2] : pts) span = std::max({span, std::abs(x - x2), std::abs(y - y2)});
    const double rayLen = 0.75 * span;

    std::vector<std::pair<double, double>> drawn = pts;
    auto rayEnd = [&](const AffineFan::Ray& r) {
        auto [vx, vy] = pts[static_cast<size_t>(r.cell)];
        const double dx = approx(r.direction.x), dy = approx(r.direction.y);
        const double norm = std::hypot(dx, dy);
        return std::pair<double, double>{vx + rayLen * dx / norm, vy + rayLen * dy / norm};
    };
    for (const AffineFan::Ray& r : fan.rays) drawn.push_back(rayEnd(r));
    const Frame f = Frame::fit(drawn);

    std::string out;
    open_svg(out, f);
    for (const AffineFan::Ray& r : fan.rays) {
        auto [x, y] = rayEnd(r);
        line(out, f.map(pts[static_cast<size_t>(r.cell)].first, pts[static_cast<size_t>(r.cell)].second),
             f.map(x, y), "stroke=\"#777777\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
    }
    for (const auto& [a, b] : fan.bounded_edges)
        line(out, f.map(pts[static_cast<size_t>(a)].first, pts[static_cast<size_t>(a)].second),
             f.map(pts[static_cast<size_t>(b)].first, pts[static_cast<size_t>(b)].second),
             "stroke=\"#30506e\" stroke-width=\"2.5\"");
    for (size_t i = 0; i < pts.size(); ++i) {
        auto c = f.map(pts[i].first, pts[i].second);
        circle(out, c, 4.0, "fill=\"#b03030\"");
        text(out, c, std::to_string(i));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace secondary

#include "elastica/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace elastica::svg {

namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
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
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

/// About five round tick values inside [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * step; t += step) {
        out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return out;
}

}  // namespace

std::string render(const Plot& plot) {
    Range xr;
    Range yr;
    for (const auto& s : plot.series) {
        for (const auto& p : s.points) {
            xr.add(p.x);
            yr.add(p.y);
            if (s.style == Style::Bars) {
                xr.add(p.x + s.bar_width);
                yr.add(0.0);
            }
        }
    }
    xr.finish();
    yr.finish();

    const double w = plot.width;
    const double h = plot.height;
    const double pw = w - kLeft - kRight;
    const double ph = h - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto sy = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(plot.title)
      << "</text>\n";
    o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ticks(xr.lo, xr.hi)) {
        const double x = sx(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\""
          << num(kTop + ph + 5) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18) << "\" text-anchor=\"middle\">" << num(t)
          << "</text>\n";
    }
    for (double t : ticks(yr.lo, yr.hi)) {
        const double y = sy(t);
        o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
          << num(y) << "\" stroke=\"black\"/>";
        o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(t)
          << "</text>\n";
    }
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(h - 12) << "\" text-anchor=\"middle\">"
      << escape(plot.x_label) << "</text>\n";
    o << "<text transform=\"translate(16," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(plot.y_label) << "</text>\n";

    for (const auto& s : plot.series) {
        o << "<g>\n";
        switch (s.style) {
            case Style::Points:
                for (const auto& p : s.points) {
                    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
                    o << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y)) << "\" r=\"2\" fill=\"" << s.color
                      << "\" fill-opacity=\"0.6\"/>\n";
                }
                break;
            case Style::Line:
            case Style::Dashed: {
                o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
                if (s.style == Style::Dashed) o << " stroke-dasharray=\"6,4\"";
                o << " points=\"";
                for (const auto& p : s.points) o << num(sx(p.x)) << ',' << num(sy(p.y)) << ' ';
                o << "\"/>\n";
                break;
            }
            case Style::Bars:
                for (const auto& p : s.points) {
                    const double x0 = sx(p.x);
                    const double x1 = sx(p.x + s.bar_width);
                    const double y0 = sy(std::max(p.y, 0.0));
                    o << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(std::max(0.0, x1 - x0))
                      << "\" height=\"" << num(sy(0.0) - y0) << "\" fill=\"" << s.color
                      << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
                }
                break;
        }
        o << "</g>\n";
    }

    double ly = kTop + 14;
    for (const auto& s : plot.series) {
        if (s.name.empty()) continue;
        o << "<rect x=\"" << num(kLeft + pw - 150) << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
          << s.color << "\"/><text x=\"" << num(kLeft + pw - 135) << "\" y=\"" << num(ly) << "\">" << escape(s.name)
          << "</text>\n";
        ly += 16;
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace elastica::svg

#include "vvlab/svg_plot.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace vvlab {
namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo, hi;  // decades
    double map(double v, double a, double b) const { return a + (std::log10(v) - lo) / (hi - lo) * (b - a); }
};

Axis decade_axis(double lo, double hi) {
    Axis ax{std::floor(std::log10(lo)), std::ceil(std::log10(hi))};
    if (ax.hi <= ax.lo) ax.hi = ax.lo + 1.0;
    return ax;
}

}  // namespace

std::string loglog_svg(const std::string& title, const std::vector<std::pair<double, double>>& points,
                       const RateFit& fit) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : points) {
        if (p.first > 0.0 && p.second > 0.0 && std::isfinite(p.second)) pts.push_back(p);
    }
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n",
        kWidth, kHeight, kWidth, kHeight);
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += fmt::format("<text x=\"{:.1f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n", kWidth / 2,
                     escape(title));
    if (pts.empty()) {
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">no positive values</text>\n",
                         kWidth / 2, kHeight / 2);
        return s + "</svg>\n";
    }

    auto [xmin_it, xmax_it] = std::minmax_element(pts.begin(), pts.end());
    double ymin = pts.front().second, ymax = ymin;
    for (const auto& p : pts) {
        ymin = std::min(ymin, p.second);
        ymax = std::max(ymax, p.second);
    }
    const Axis ax = decade_axis(xmin_it->first, xmax_it->first);
    const Axis ay = decade_axis(ymin, ymax);
    const double x0 = kMargin, x1 = kWidth - kMargin / 2, y0 = kHeight - kMargin, y1 = kMargin / 1.5;

    // frame and decade ticks
    s += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
                     x0, y1, x1 - x0, y0 - y1);
    for (double d = ax.lo; d <= ax.hi; d += 1.0) {
        const double x = ax.map(std::pow(10.0, d), x0, x1);
        s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>\n", x, y0, y1);
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"11\">1e{:.0f}</text>\n", x,
                         y0 + 16, d);
    }
    for (double d = ay.lo; d <= ay.hi; d += 1.0) {
        const double y = ay.map(std::pow(10.0, d), y0, y1);
        s += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n", x0, y, x1);
        s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" font-size=\"11\">1e{:.0f}</text>\n", x0 - 4,
                         y + 4, d);
    }
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"12\">nu</text>\n",
                     (x0 + x1) / 2, kHeight - 12);

    if (fit.ok()) {
        const double xa = xmin_it->first, xb = xmax_it->first;
        const double ya = fit.prefactor() * std::pow(xa, fit.exponent);
        const double yb = fit.prefactor() * std::pow(xb, fit.exponent);
        s += fmt::format(
            "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#c33\" stroke-dasharray=\"6,3\"/>\n",
            ax.map(xa, x0, x1), ay.map(ya, y0, y1), ax.map(xb, x0, x1), ay.map(yb, y0, y1));
        s += fmt::format(
            "<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"12\" fill=\"#c33\">slope {:.4f}, R2 {:.4f}</text>\n", x0 + 8,
            y1 + 16, fit.exponent, fit.r_squared);
    }
    for (const auto& [x, y] : pts) {
        s += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" fill=\"#236\"/>\n", ax.map(x, x0, x1),
                         ay.map(y, y0, y1));
    }
    return s + "</svg>\n";
}

}  // namespace vvlab

#include "tssp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "tssp/errors.hpp"

namespace tssp {
namespace {

constexpr double kW = 640, kH = 480;
constexpr double kL = 70, kR = 20, kT = 40, kB = 50; // margins

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Axis {
    double lo = 0, hi = 1; // log2 range
    double map(double v, double px0, double px1) const {
        return px0 + (std::log2(v) - lo) / (hi - lo) * (px1 - px0);
    }
};

} // namespace

void write_loglog_svg(std::ostream& os, const LogLogPlot& plot) {
    Axis xa, ya;
    bool any = false;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0))
                throw ConfigError("svg: log-log plot needs positive data");
            const double lx = std::log2(s.x[i]), ly = std::log2(s.y[i]);
            if (!any) {
                xa.lo = xa.hi = lx;
                ya.lo = ya.hi = ly;
                any = true;
            } else {
                xa.lo = std::min(xa.lo, lx);
                xa.hi = std::max(xa.hi, lx);
                ya.lo = std::min(ya.lo, ly);
                ya.hi = std::max(ya.hi, ly);
            }
        }
    if (!any) throw ConfigError("svg: no data");
    // guide lines span the x range; widen y to fit them
    for (double order : plot.guide_orders) {
        const auto& s0 = plot.series.front();
        const double yref = std::log2(s0.y.back()), xref = std::log2(s0.x.back());
        ya.lo = std::min(ya.lo, yref + order * (xa.lo - xref));
        ya.hi = std::max(ya.hi, yref + order * (xa.hi - xref));
    }
    if (xa.hi == xa.lo) xa.hi = xa.lo + 1;
    if (ya.hi == ya.lo) ya.hi = ya.lo + 1;
    const double pad = 0.05 * (ya.hi - ya.lo);
    ya.lo -= pad;
    ya.hi += pad;

    auto X = [&](double v) { return xa.map(v, kL, kW - kR); };
    auto Y = [&](double v) { return ya.map(v, kH - kB, kT); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
       << plot.title << "</text>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 10
       << "\" text-anchor=\"middle\" font-size=\"12\">" << plot.xlabel << " (log2)</text>\n";
    os << "<text x=\"14\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
       << "transform=\"rotate(-90 14 " << kH / 2 << ")\">" << plot.ylabel << " (log2)</text>\n";
    // frame and integer log2 ticks
    os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
       << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(xa.lo)); e <= static_cast<int>(std::floor(xa.hi)); ++e) {
        const double px = xa.map(std::exp2(e), kL, kW - kR);
        os << "<line x1=\"" << px << "\" y1=\"" << kH - kB << "\" x2=\"" << px << "\" y2=\""
           << kH - kB + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << kH - kB + 18
           << "\" text-anchor=\"middle\" font-size=\"10\">" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ya.lo)); e <= static_cast<int>(std::floor(ya.hi)); ++e) {
        const double py = ya.map(std::exp2(e), kH - kB, kT);
        os << "<line x1=\"" << kL - 5 << "\" y1=\"" << py << "\" x2=\"" << kL << "\" y2=\"" << py
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kL - 8 << "\" y=\"" << py + 3
           << "\" text-anchor=\"end\" font-size=\"10\">" << e << "</text>\n";
    }

    int color = 0;
    for (const auto& s : plot.series) {
        const char* c = kColors[color++ % 6];
        os << "<polyline fill=\"none\" stroke=\"" << c << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) os << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
        os << "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << "<circle cx=\"" << X(s.x[i]) << "\" cy=\"" << Y(s.y[i]) << "\" r=\"3\" fill=\""
               << c << "\"/>\n";
        os << "<text x=\"" << kW - kR - 8 << "\" y=\"" << kT + 16 + 14 * (color - 1)
           << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << c << "\">" << s.label
           << "</text>\n";
    }

    for (double order : plot.guide_orders) {
        const auto& s0 = plot.series.front();
        const double xref = s0.x.back(), yref = s0.y.back();
        const double x0 = std::exp2(xa.lo), x1 = std::exp2(xa.hi);
        const double y0 = yref * std::pow(x0 / xref, order);
        const double y1 = yref * std::pow(x1 / xref, order);
        char meta[160];
        std::snprintf(meta, sizeof meta,
                      "<!-- guide order=%.6g x0=%.17g y0=%.17g x1=%.17g y1=%.17g -->", order, x0,
                      y0, x1, y1);
        os << meta << '\n';
        os << "<line class=\"guide\" x1=\"" << X(x0) << "\" y1=\"" << Y(y0) << "\" x2=\"" << X(x1)
           << "\" y2=\"" << Y(y1)
           << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
        os << "<text x=\"" << X(x1) - 4 << "\" y=\"" << Y(y1) - 4
           << "\" text-anchor=\"end\" font-size=\"10\" fill=\"gray\">order " << order
           << "</text>\n";
    }
    os << "</svg>\n";
}

} // namespace tssp

#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace tssp {

// Minimal built-in log-log plot: points + polyline per series, dashed
// guide lines of prescribed order anchored at the first series' last
// point. Each guide line also appears as an XML comment with its
// data-space endpoints so emitted plots are checkable as text:
//   <!-- guide order=1.50 x0=... y0=... x1=... y1=... -->

struct SvgSeries {
    std::string label;
    std::vector<double> x, y; // positive values (plotted on log2 axes)
};

struct LogLogPlot {
    std::string title, xlabel, ylabel;
    std::vector<SvgSeries> series;
    std::vector<double> guide_orders;
};

void write_loglog_svg(std::ostream& os, const LogLogPlot& plot);

} // namespace tssp

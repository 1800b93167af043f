#pragma once

#include <string>
#include <vector>

namespace oamncc::svg {

struct Series {
    std::string label;
    std::string color;
    bool cross_marker = false; // x marks instead of dots
    std::vector<std::pair<double, double>> points;
};

/**
 * Minimal scatter chart: axes, ticks, points, legend. Deterministic output
 * (fixed float formatting), no plotting dependency; CSV stays the primary
 * artifact and the chart is a convenience view.
 */
std::string scatter_chart(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series);

struct StripGroup {
    std::string label;
    std::string color;
    std::vector<double> samples;
    double mean = 0.0;
};

/// Two-or-more group strip plot with horizontal mean lines.
std::string strip_chart(const std::string& title, const std::string& y_label,
                        const std::vector<StripGroup>& groups);

} // namespace oamncc::svg

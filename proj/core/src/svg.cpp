#include "oamncc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace oamncc::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 60.0;

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c; break;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void include(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad()
    {
        if (hi <= lo) {
            hi = lo + 1.0;
        }
        const double span = hi - lo;
        lo -= 0.05 * span;
        hi += 0.05 * span;
    }
};

double map_x(double v, const Range& r)
{
    return kMarginLeft + (v - r.lo) / (r.hi - r.lo) * (kWidth - kMarginLeft - kMarginRight);
}

double map_y(double v, const Range& r)
{
    return kHeight - kMarginBottom -
           (v - r.lo) / (r.hi - r.lo) * (kHeight - kMarginTop - kMarginBottom);
}

void axes(std::ostringstream& out, const std::string& title, const std::string& x_label,
          const std::string& y_label, const Range& xr, const Range& yr)
{
    out << "<rect width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";

    const double x0 = kMarginLeft;
    const double x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom;
    const double y1 = kMarginTop;
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1)
        << "\" y2=\"" << num(y0) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0)
        << "\" y2=\"" << num(y1) << "\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double px = map_x(fx, xr);
        const double py = map_y(fy, yr);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px)
            << "\" y2=\"" << num(y0 + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(fx) << "</text>\n";
        out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(x0)
            << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 16)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << num((y0 + y1) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << num((y0 + y1) / 2) << ")\">" << escape(y_label)
        << "</text>\n";
}

void legend_entry(std::ostringstream& out, double x, double y, const std::string& color,
                  bool cross, const std::string& label)
{
    if (cross) {
        out << "<path d=\"M" << num(x - 4) << " " << num(y - 4) << " L" << num(x + 4) << " "
            << num(y + 4) << " M" << num(x - 4) << " " << num(y + 4) << " L" << num(x + 4) << " "
            << num(y - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    } else {
        out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"" << color
            << "\"/>\n";
    }
    out << "<text x=\"" << num(x + 10) << "\" y=\"" << num(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(label) << "</text>\n";
}

} // namespace

std::string scatter_chart(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<Series>& series)
{
    Range xr;
    Range yr;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xr = {x, x};
                yr = {y, y};
                any = true;
            } else {
                xr.include(x);
                yr.include(y);
            }
        }
    }
    xr.pad();
    yr.pad();

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
        << num(kHeight) << "\">\n";
    axes(out, title, x_label, y_label, xr, yr);

    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            const double px = map_x(x, xr);
            const double py = map_y(y, yr);
            if (s.cross_marker) {
                out << "<path d=\"M" << num(px - 5) << " " << num(py - 5) << " L" << num(px + 5)
                    << " " << num(py + 5) << " M" << num(px - 5) << " " << num(py + 5) << " L"
                    << num(px + 5) << " " << num(py - 5) << "\" stroke=\"" << s.color
                    << "\" stroke-width=\"2\"/>\n";
            } else {
                out << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"4\" fill=\""
                    << s.color << "\" fill-opacity=\"0.8\"/>\n";
            }
        }
    }

    double ly = kMarginTop + 10.0;
    for (const auto& s : series) {
        legend_entry(out, kWidth - kMarginRight + 18.0, ly, s.color, s.cross_marker, s.label);
        ly += 18.0;
    }
    out << "</svg>\n";
    return out.str();
}

std::string strip_chart(const std::string& title, const std::string& y_label,
                        const std::vector<StripGroup>& groups)
{
    Range yr;
    bool any = false;
    for (const auto& g : groups) {
        for (double v : g.samples) {
            if (!any) {
                yr = {v, v};
                any = true;
            } else {
                yr.include(v);
            }
        }
    }
    yr.pad();
    Range xr{0.0, static_cast<double>(groups.size())};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
        << num(kHeight) << "\">\n";
    axes(out, title, "", y_label, xr, yr);

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const StripGroup& g = groups[gi];
        const double cx = static_cast<double>(gi) + 0.5;
        // Deterministic horizontal jitter from the sample index.
        for (std::size_t i = 0; i < g.samples.size(); ++i) {
            const double jitter = (static_cast<double>((i * 2654435761u) % 1000) / 1000.0 - 0.5) * 0.6;
            const double px = map_x(cx + jitter, xr);
            const double py = map_y(g.samples[i], yr);
            out << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"2\" fill=\""
                << g.color << "\" fill-opacity=\"0.35\"/>\n";
        }
        const double mean_y = map_y(g.mean, yr);
        out << "<line x1=\"" << num(map_x(cx - 0.35, xr)) << "\" y1=\"" << num(mean_y)
            << "\" x2=\"" << num(map_x(cx + 0.35, xr)) << "\" y2=\"" << num(mean_y)
            << "\" stroke=\"purple\" stroke-width=\"3\"/>\n";
        out << "<text x=\"" << num(map_x(cx, xr)) << "\" y=\"" << num(kHeight - kMarginBottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << escape(g.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace oamncc::svg

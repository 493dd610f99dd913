#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "jade/io.hpp"

namespace jade::io {

namespace {

const char* const palette[] = {"#1f5fa8", "#c8432b", "#2e8b57", "#8a5fb0", "#c98a12", "#3c3c3c"};

std::string fmt(double v, int decimals = 2) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(decimals);
    os << v;
    return os.str();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick_label(double v) {
    if (v == 0.0) return "0";
    const double a = std::abs(v);
    if (a >= 1e4 || a < 1e-2) {
        std::ostringstream os;
        os.precision(2);
        os << std::scientific << v;
        return os.str();
    }
    return format_number(std::round(v * 1000.0) / 1000.0);
}

}  // namespace

std::string render_svg(const std::vector<Series>& series, const PlotOptions& opt) {
    if (series.empty()) throw std::invalid_argument("plot: no series");
    const std::size_t n = series.front().values.size();
    for (const auto& s : series) {
        if (s.values.empty()) throw std::invalid_argument("plot: series '" + s.name + "' is empty");
        if (s.values.size() != n) throw std::invalid_argument("plot: series lengths differ");
    }
    if (!opt.x.empty() && opt.x.size() != n) throw std::invalid_argument("plot: x axis length differs");

    // panel assignment in order of first appearance
    std::vector<std::vector<std::size_t>> panels;
    std::map<int, std::size_t> by_id;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const int id = series[i].panel;
        if (id < 0 || !by_id.count(id)) {
            if (id >= 0) by_id[id] = panels.size();
            panels.push_back({i});
        } else {
            panels[by_id[id]].push_back(i);
        }
    }

    const double left = 70, right = 20, top = opt.title.empty() ? 20 : 40, gap = 40;
    const double pw = opt.width - left - right, ph = opt.panel_height;
    const double height = top + panels.size() * (ph + gap) + 10;
    auto xval = [&](std::size_t k) { return opt.x.empty() ? static_cast<double>(k) : opt.x[k]; };
    const double x0 = xval(0), x1 = n > 1 ? xval(n - 1) : x0 + 1;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width << "\" height=\""
       << fmt(height, 0) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << fmt(height, 0)
       << "\" fill=\"white\"/>\n";
    if (!opt.title.empty())
        os << "<text x=\"" << fmt(opt.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
           << escape(opt.title) << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double py = top + p * (ph + gap);
        double lo = INFINITY, hi = -INFINITY;
        for (auto i : panels[p])
            for (double v : series[i].values)
                if (std::isfinite(v)) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
        if (!std::isfinite(lo)) lo = -1, hi = 1;
        if (hi == lo) lo -= 1, hi += 1;
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
        auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
        auto sy = [&](double y) { return py + (hi - y) / (hi - lo) * ph; };

        os << "<g class=\"panel\">\n<rect x=\"" << fmt(left) << "\" y=\"" << fmt(py) << "\" width=\"" << fmt(pw) << "\" height=\""
           << fmt(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
        for (int t = 0; t <= 4; ++t) {
            const double yv = lo + (hi - lo) * t / 4.0, xv = x0 + (x1 - x0) * t / 4.0;
            os << "<line x1=\"" << fmt(left - 4) << "\" y1=\"" << fmt(sy(yv)) << "\" x2=\"" << fmt(left)
               << "\" y2=\"" << fmt(sy(yv)) << "\" stroke=\"#444\"/>";
            os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(sy(yv) + 4) << "\" text-anchor=\"end\">"
               << tick_label(yv) << "</text>\n";
            os << "<line x1=\"" << fmt(sx(xv)) << "\" y1=\"" << fmt(py + ph) << "\" x2=\"" << fmt(sx(xv))
               << "\" y2=\"" << fmt(py + ph + 4) << "\" stroke=\"#444\"/>";
            os << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << fmt(py + ph + 16) << "\" text-anchor=\"middle\">"
               << tick_label(xv) << "</text>\n";
        }
        if (p + 1 == panels.size())
            os << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(py + ph + 30)
               << "\" text-anchor=\"middle\">" << escape(opt.x_label) << "</text>\n";

        for (std::size_t j = 0; j < panels[p].size(); ++j) {
            const auto& s = series[panels[p][j]];
            const char* colour = palette[panels[p][j] % std::size(palette)];
            // at most two points (min, max) per pixel column
            const std::size_t cols = static_cast<std::size_t>(pw);
            os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
            auto point = [&](std::size_t k) {
                if (std::isfinite(s.values[k])) os << fmt(sx(xval(k))) << ',' << fmt(sy(s.values[k])) << ' ';
            };
            if (n <= 2 * cols) {
                for (std::size_t k = 0; k < n; ++k) point(k);
            } else {
                for (std::size_t c = 0; c < cols; ++c) {
                    const std::size_t a = c * n / cols, b = (c + 1) * n / cols;
                    std::size_t kmin = a, kmax = a;
                    for (std::size_t k = a; k < b; ++k) {
                        if (s.values[k] < s.values[kmin]) kmin = k;
                        if (s.values[k] > s.values[kmax]) kmax = k;
                    }
                    point(std::min(kmin, kmax));
                    point(std::max(kmin, kmax));
                }
            }
            os << "\"/>\n";
            const double ly = py + 14 + 14 * j;
            os << "<line x1=\"" << fmt(left + pw - 120) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
               << fmt(left + pw - 100) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << colour
               << "\" stroke-width=\"2\"/>";
            os << "<text x=\"" << fmt(left + pw - 95) << "\" y=\"" << fmt(ly) << "\">" << escape(s.name)
               << "</text>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_plot(const std::vector<Series>& series, const fs::path& path, const PlotOptions& options) {
    atomic_write(path, render_svg(series, options));
}

}  // namespace jade::io

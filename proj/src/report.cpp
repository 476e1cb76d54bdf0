// Copyright 2026 The hamsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hamsim/numerics.hpp"

namespace hamsim::report {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void Document::set(const std::string &section, const std::string &key, const std::string &value) {
    if (value.find('\n') != std::string::npos || key.find('=') != std::string::npos) {
        throw PreconditionError("Document::set: keys may not hold '=' and values must be single-line");
    }
    auto it = std::find_if(sections_.begin(), sections_.end(), [&](const auto &s) { return s.first == section; });
    if (it == sections_.end()) {
        sections_.push_back({section, {}});
        it = sections_.end() - 1;
    }
    for (auto &kv : it->second) {
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    }
    it->second.emplace_back(key, value);
}

void Document::set(const std::string &section, const std::string &key, double value) {
    set(section, key, num(value));
}

void Document::write(std::ostream &out) const {
    bool first = true;
    for (const auto &[name, entries] : sections_) {
        if (!first) {
            out << '\n';
        }
        first = false;
        out << '[' << name << "]\n";
        for (const auto &[k, v] : entries) {
            out << k << " = " << v << '\n';
        }
    }
}

std::string Document::str() const {
    std::ostringstream ss;
    write(ss);
    return ss.str();
}

double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw PreconditionError("loglog_slope: need at least two matching points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); i++) {
        if (!(x[i] > 0) || !(y[i] > 0)) {
            throw PreconditionError("loglog_slope: values must be positive");
        }
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < x.size(); i++) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0) {
        throw PreconditionError("loglog_slope: x values are all equal");
    }
    return sxy / sxx;
}

static std::string escape_xml(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string svg_line_plot(const std::string &title, const std::string &x_label, const std::string &y_label,
                          const std::vector<Series> &series, bool log_x, bool log_y) {
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    const double w = 640, h = 420, left = 70, right = 20, top = 40, bottom = 60;
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto &s : series) {
        if (s.x.size() != s.y.size()) {
            throw PreconditionError("svg_line_plot: series '" + s.name + "' has mismatched x and y");
        }
        for (size_t i = 0; i < s.x.size(); i++) {
            if ((log_x && !(s.x[i] > 0)) || (log_y && !(s.y[i] > 0))) {
                throw PreconditionError("svg_line_plot: non-positive value on a log axis");
            }
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!(x0 <= x1)) {
        x0 = 0;
        x1 = 1;
        y0 = 0;
        y1 = 1;
    }
    if (x1 == x0) {
        x1 = x0 + 1;
    }
    if (y1 == y0) {
        y1 = y0 + 1;
    }
    auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * (w - left - right); };
    auto py = [&](double v) { return h - bottom - (ty(v) - y0) / (y1 - y0) * (h - top - bottom); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
      << "</text>\n";
    o << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
    auto tick = [&](double v, bool log) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", log ? std::pow(10.0, v) : v);
        return std::string(buf);
    };
    for (int i = 0; i <= 4; i++) {
        double fx = x0 + (x1 - x0) * i / 4, fy = y0 + (y1 - y0) * i / 4;
        double sx = left + (w - left - right) * i / 4, sy = h - bottom - (h - top - bottom) * i / 4;
        o << "<text x=\"" << sx << "\" y=\"" << h - bottom + 16 << "\" text-anchor=\"middle\">" << tick(fx, log_x)
          << "</text>\n";
        o << "<text x=\"" << left - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">" << tick(fy, log_y)
          << "</text>\n";
    }
    o << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 20 << "\" text-anchor=\"middle\">"
      << escape_xml(x_label) << "</text>\n";
    o << "<text x=\"16\" y=\"" << (top + h - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (top + h - bottom) / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
    for (size_t k = 0; k < series.size(); k++) {
        const auto &s = series[k];
        const char *c = colors[k % 6];
        o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
        for (size_t i = 0; i < s.x.size(); i++) {
            o << (i ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
        }
        o << "\"/>\n";
        o << "<text x=\"" << w - right - 4 << "\" y=\"" << top + 14 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << c
          << "\">" << escape_xml(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace hamsim::report

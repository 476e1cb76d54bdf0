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

#ifndef HAMSIM_REPORT_HPP
#define HAMSIM_REPORT_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace hamsim::report {

/// Shortest round-trip decimal form ("%.17g"), locale independent.
std::string num(double x);

/// Results document: "[section]" headers followed by "key = value" lines, in
/// insertion order. Values are single-line strings.
class Document {
   public:
    void set(const std::string &section, const std::string &key, const std::string &value);
    void set(const std::string &section, const std::string &key, double value);
    void write(std::ostream &out) const;
    std::string str() const;

   private:
    std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> sections_;
};

/// Least-squares slope of log y against log x. Needs two distinct x and y > 0.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line plot; log axes take log10 of positive values.
std::string svg_line_plot(const std::string &title, const std::string &x_label, const std::string &y_label,
                          const std::vector<Series> &series, bool log_x = false, bool log_y = false);

}  // namespace hamsim::report

#endif

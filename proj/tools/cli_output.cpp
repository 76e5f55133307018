// SPDX-License-Identifier: Apache-2.0
//
// massivese - spectral efficiency optimization for multi-cell massive MIMO
// Copyright (C) 2026 The massivese authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli_output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace massivese::cli
{

CsvWriter::CsvWriter(const std::string &path) : out_(&std::cout)
{
    if (!path.empty() && path != "-")
    {
        file_.open(path);
        if (!file_)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        out_ = &file_;
    }
}

void CsvWriter::provenance(const Provenance &p)
{
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(p.config_hash));
    *out_ << "# massivese " << p.version << '\n'
          << "# command " << p.command << '\n'
          << "# config_hash " << hash << '\n'
          << "# seed " << p.seed << '\n';
}

void CsvWriter::comment(const std::string &text)
{
    *out_ << "# " << text << '\n';
}

void CsvWriter::header(const std::vector<std::string> &columns)
{
    columns_ = columns.size();
    row(columns);
}

void CsvWriter::row(const std::vector<std::string> &fields)
{
    if (columns_ != 0 && fields.size() != columns_)
        throw std::logic_error("CsvWriter: row width does not match the header");
    for (std::size_t i = 0; i < fields.size(); ++i)
        *out_ << (i ? "," : "") << fields[i];
    *out_ << '\n';
    out_->flush();
}

std::string num(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string num(std::int64_t v)
{
    return std::to_string(v);
}

namespace
{
constexpr const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi)
{
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0})
        if (f * mag >= raw)
        {
            step = f * mag;
            break;
        }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        t.push_back(v);
    return t;
}
} // namespace

void write_svg(const std::string &path, const PlotSpec &spec, const std::vector<Series> &series)
{
    const double W = 720, H = 480, left = 70, right = 170, top = 40, bottom = 60;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = 0.0, y1 = -x0;
    for (const Series &s : series)
        for (const auto &[x, y] : s.points)
        {
            if (spec.log_x && x <= 0)
                continue;
            const double xv = spec.log_x ? std::log10(x) : x;
            x0 = std::min(x0, xv);
            x1 = std::max(x1, xv);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x1 > x0))
    {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (!(y1 > y0))
        y1 = y0 + 1.0;
    y1 *= 1.05;

    const auto px = [&](double x) {
        const double xv = spec.log_x ? std::log10(x) : x;
        return left + (xv - x0) / (x1 - x0) * (W - left - right);
    };
    const auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };

    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << (left + (W - left - right) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
    f << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << (W - left - right) << "\" height=\""
      << (H - top - bottom) << "\" fill=\"none\" stroke=\"black\"/>\n";

    std::vector<double> xt;
    if (spec.log_x)
        for (double d = std::ceil(x0); d <= x1 + 1e-9; d += 1.0)
            xt.push_back(std::pow(10.0, d));
    else
        xt = nice_ticks(x0, x1);
    for (double x : xt)
    {
        char lab[32];
        std::snprintf(lab, sizeof lab, "%g", x);
        f << "<line x1=\"" << px(x) << "\" x2=\"" << px(x) << "\" y1=\"" << (H - bottom) << "\" y2=\"" << (H - bottom + 5)
          << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << px(x) << "\" y=\"" << (H - bottom + 18) << "\" text-anchor=\"middle\">" << lab
          << "</text>\n";
    }
    for (double y : nice_ticks(y0, y1))
    {
        char lab[32];
        std::snprintf(lab, sizeof lab, "%g", y);
        f << "<line x1=\"" << (left - 5) << "\" x2=\"" << left << "\" y1=\"" << py(y) << "\" y2=\"" << py(y)
          << "\" stroke=\"black\"/>\n";
        f << "<text x=\"" << (left - 8) << "\" y=\"" << (py(y) + 4) << "\" text-anchor=\"end\">" << lab << "</text>\n";
    }
    f << "<text x=\"" << (left + (W - left - right) / 2) << "\" y=\"" << (H - 15) << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
    f << "<text transform=\"translate(18," << (top + (H - top - bottom) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i)
    {
        const Series &s = series[i];
        const char *colour = palette[i % std::size(palette)];
        f << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
        for (const auto &[x, y] : s.points)
            if (!spec.log_x || x > 0)
                f << px(x) << ',' << py(y) << ' ';
        f << "\"/>\n";
        for (const auto &[x, y] : s.markers)
            f << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"4\" fill=\"none\" stroke=\"" << colour
              << "\"/>\n";
        const double ly = top + 16 + 18.0 * static_cast<double>(i);
        f << "<line x1=\"" << (W - right + 12) << "\" x2=\"" << (W - right + 36) << "\" y1=\"" << ly << "\" y2=\"" << ly
          << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        f << "<text x=\"" << (W - right + 42) << "\" y=\"" << (ly + 4) << "\">" << escape(s.name) << "</text>\n";
    }
    f << "</svg>\n";
}

} // namespace massivese::cli

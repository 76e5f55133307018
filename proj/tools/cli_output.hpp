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

#ifndef MASSIVESE_TOOLS_CLI_OUTPUT_HPP
#define MASSIVESE_TOOLS_CLI_OUTPUT_HPP

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace massivese::cli
{

struct Provenance
{
    std::string version;
    std::string command;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

// CSV with leading '#' provenance lines and a single header row.
class CsvWriter
{
  public:
    // Empty path or "-" writes to stdout.
    explicit CsvWriter(const std::string &path);

    void provenance(const Provenance &p);
    void comment(const std::string &text);
    void header(const std::vector<std::string> &columns);
    void row(const std::vector<std::string> &fields);

  private:
    std::ofstream file_;
    std::ostream *out_;
    std::size_t columns_ = 0;
};

std::string num(double v);
std::string num(std::int64_t v);
inline std::string num(int v) { return num(static_cast<std::int64_t>(v)); }

struct Series
{
    std::string name;
    std::vector<std::pair<double, double>> points;
    std::vector<std::pair<double, double>> markers;
};

struct PlotSpec
{
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

// Standalone SVG line plot. Throws std::runtime_error if the file cannot be
// written.
void write_svg(const std::string &path, const PlotSpec &spec, const std::vector<Series> &series);

} // namespace massivese::cli

#endif

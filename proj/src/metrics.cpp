// Copyright 2026 The rcpcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rcpcc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>

namespace rcpcc {

double
range_mae(const RangeImage& original, const RangeImage& reconstructed,
          const ShapeMask* mask)
{
  if (original.width() != reconstructed.width()
      || original.height() != reconstructed.height())
    throw Error(ErrorCode::kConfigMismatch, "range images differ in size");
  if (mask && (mask->width() != original.width() || mask->height() != original.height()))
    throw Error(ErrorCode::kConfigMismatch, "mask differs in size");

  double sum = 0;
  std::size_t n = 0;
  for (int j = 0; j < original.height(); ++j) {
    auto a = original.row(j);
    auto b = reconstructed.row(j);
    for (int i = 0; i < original.width(); ++i) {
      if (!(a[i] > 0) || !(b[i] > 0))
        continue;
      if (mask && !mask->test(i, j))
        continue;
      sum += std::fabs(a[i] - b[i]);
      ++n;
    }
  }
  return n ? 100.0 * sum / static_cast<double>(n) : 0.0;
}

double
compression_ratio(std::size_t point_count, std::size_t compressed_bytes,
                  std::size_t bytes_per_point)
{
  if (point_count == 0 || compressed_bytes == 0)
    return 0.0;
  return static_cast<double>(point_count * bytes_per_point)
    / static_cast<double>(compressed_bytes);
}

QualityReport
quality_report(const RangeImage& original, const RangeImage& reconstructed,
               const ShapeMask& fitted, std::size_t input_points,
               std::size_t compressed_bytes, std::size_t bytes_per_point)
{
  QualityReport q;
  const ShapeMask occupancy = original.occupancy();
  const ShapeMask unfit = occupancy.minus(fitted);
  q.overall_mae_cm = range_mae(original, reconstructed);
  q.fitted_mae_cm = range_mae(original, reconstructed, &fitted);
  q.unfit_mae_cm = range_mae(original, reconstructed, &unfit);
  q.compression_ratio = compression_ratio(input_points, compressed_bytes, bytes_per_point);
  const std::size_t occupied = occupancy.count();
  q.dropped_fraction = input_points
    ? static_cast<double>(input_points - std::min(input_points, occupied))
      / static_cast<double>(input_points)
    : 0.0;
  q.fitted_fraction = occupied
    ? static_cast<double>(fitted.intersect(occupancy).count()) / occupied
    : 0.0;
  return q;
}

//============================================================================

std::string
fmt_num(double v, int precision)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

void
CsvTable::add_row(std::vector<std::string> row)
{
  row.resize(header_.size());
  rows_.push_back(std::move(row));
}

void
CsvTable::write_csv(std::ostream& os) const
{
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k)
        os << ',';
      const bool quote = cells[k].find_first_of(",\"\n") != std::string::npos;
      if (quote) {
        os << '"';
        for (char c : cells[k])
          os << (c == '"' ? "\"\"" : std::string(1, c));
        os << '"';
      } else {
        os << cells[k];
      }
    }
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_)
    line(r);
}

void
CsvTable::write_pretty(std::ostream& os) const
{
  std::vector<std::size_t> width(header_.size());
  for (std::size_t k = 0; k < header_.size(); ++k) {
    width[k] = header_[k].size();
    for (const auto& r : rows_)
      width[k] = std::max(width[k], r[k].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k)
      os << (k ? "  " : "") << std::setw(static_cast<int>(width[k])) << cells[k];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_)
    line(r);
}

std::vector<std::string>
quality_csv_header()
{
  return {"overall_mae_cm", "fitted_mae_cm", "unfit_mae_cm",
          "compression_ratio", "dropped_fraction", "fitted_fraction"};
}

std::vector<std::string>
quality_csv_row(const QualityReport& q)
{
  return {fmt_num(q.overall_mae_cm), fmt_num(q.fitted_mae_cm),
          fmt_num(q.unfit_mae_cm), fmt_num(q.compression_ratio),
          fmt_num(q.dropped_fraction), fmt_num(q.fitted_fraction)};
}

}  // namespace rcpcc

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

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rcpcc/range_image.hpp"

namespace rcpcc {

/// Mean |r_orig - r_rec| in centimeters over cells occupied in both images,
/// optionally restricted to `mask`. 0 when no cell qualifies. Throws
/// ConfigMismatch when the image geometries differ.
double range_mae(const RangeImage& original, const RangeImage& reconstructed,
                 const ShapeMask* mask = nullptr);

/// (point_count * bytes_per_point) / compressed_bytes; 0 for zero points.
double compression_ratio(std::size_t point_count, std::size_t compressed_bytes,
                         std::size_t bytes_per_point = 16);

struct QualityReport {
  double overall_mae_cm = 0;
  double fitted_mae_cm = 0;
  double unfit_mae_cm = 0;
  double compression_ratio = 0;
  double dropped_fraction = 0;  // input points lost at projection
  double fitted_fraction = 0;   // of occupied pixels
};

/// Compares an original range image with its reconstruction, splitting MAE
/// by the decoder's fitted mask.
QualityReport quality_report(const RangeImage& original,
                             const RangeImage& reconstructed,
                             const ShapeMask& fitted, std::size_t input_points,
                             std::size_t compressed_bytes,
                             std::size_t bytes_per_point = 16);

/// Minimal CSV table with deterministic formatting.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  void write_csv(std::ostream& os) const;
  /// Fixed-width text rendering for terminals.
  void write_pretty(std::ostream& os) const;

  std::size_t rows() const { return rows_.size(); }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Fixed-precision number formatting used by every report.
std::string fmt_num(double v, int precision = 4);

std::vector<std::string> quality_csv_header();
std::vector<std::string> quality_csv_row(const QualityReport& q);

}  // namespace rcpcc

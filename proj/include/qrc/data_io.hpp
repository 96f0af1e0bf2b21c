// Copyright 2026 The qrforecast Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qrc/readout.hpp"

namespace qrc {

// GPS track: parallel per-point arrays, timestamps non-decreasing (a
// decreasing timestamp is reported as a warning by the parser, not an error).
struct TrajectorySeries {
  std::vector<std::int64_t> timestamps;  // seconds since epoch, naive local time
  std::vector<double> latitude;          // degrees
  std::vector<double> longitude;         // degrees

  std::size_t size() const { return timestamps.size(); }
};

// "YYYY-MM-DD HH:MM:SS" (or with ',' between date and time) -> epoch seconds.
std::int64_t parse_timestamp(const std::string& text);

// Geolife .plt: six header lines, then one record per line of
// latitude,longitude,flag,altitude,days,date,time.
TrajectorySeries parse_plt(std::istream& in);
TrajectorySeries parse_plt_file(const std::string& path);

// Inclusive time-window filter preserving order. Throws DataError when the
// window selects nothing.
TrajectorySeries select_window(const TrajectorySeries& series,
                               std::int64_t start, std::int64_t end);

// Values mapped into [0, 1] with the original extrema kept around so
// predictions can be mapped back to native units.
struct NormalizedSeries {
  std::vector<double> values;
  double min = 0.0;
  double max = 1.0;
  std::string variable;

  double denormalize(double v) const { return min + v * (max - min); }
};

NormalizedSeries normalize_minmax(const std::vector<double>& values,
                                  std::string variable = "value");

enum class SyntheticKind { Sine, SumOfSines, Ramp };

SyntheticKind synthetic_kind_from_string(const std::string& name);
std::string to_string(SyntheticKind kind);

// Deterministic benchmark series in [0, 1]. The seed picks the phases of the
// sum-of-sines kind; sine and ramp ignore it.
std::vector<double> gen_synthetic(SyntheticKind kind, int length,
                                  std::uint64_t seed);

// Internal trajectory CSV (header "t,latitude,longitude").
std::string serialize_trajectory(const TrajectorySeries& series);
TrajectorySeries parse_trajectory_csv(std::istream& in);

// Internal series CSV (header "t,value").
void write_series_csv(const std::vector<double>& values, const std::string& path);
std::vector<double> read_series_csv(const std::string& path);

// Per-step predictions (header "step,truth,prediction"), full precision.
void write_prediction_csv(const PredictionReport& report, const std::string& path);
PredictionReport read_prediction_csv(const std::string& path,
                                     const std::string& method,
                                     const std::string& variable);

// Comparison table mirroring the benchmark layout: one row per report,
// columns method,variable,mode,mse. Per-step prediction CSVs are written
// alongside, one per report.
void write_report(const std::vector<PredictionReport>& reports,
                  const std::string& path);

}  // namespace qrc

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

#include "qrc/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qrc/errors.hpp"
#include "qrc/rng.hpp"

namespace qrc {

namespace {

std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

std::string trim(const std::string& s) {
  std::size_t begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return std::string();
  }
  std::size_t end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == sep) {
      fields.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_double(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw DataError(context + ": malformed number '" + t + "'");
  }
  if (consumed != t.size()) {
    throw DataError(context + ": malformed number '" + t + "'");
  }
  return value;
}

std::int64_t parse_int64(const std::string& token, const std::string& context) {
  const std::string t = trim(token);
  std::size_t consumed = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &consumed);
  } catch (const std::exception&) {
    throw DataError(context + ": malformed integer '" + t + "'");
  }
  if (consumed != t.size()) {
    throw DataError(context + ": malformed integer '" + t + "'");
  }
  return value;
}

// Days since 1970-01-01 for a proleptic Gregorian civil date
// (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) -
         719468;
}

}  // namespace

std::int64_t parse_timestamp(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  const int matched =
      std::sscanf(text.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi, &s);
  if (matched != 7 || (sep != ' ' && sep != ',')) {
    throw DataError("timestamp: expected 'YYYY-MM-DD HH:MM:SS', got '" + text + "'");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || s < 0 || s > 59) {
    throw DataError("timestamp: field out of range in '" + text + "'");
  }
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

TrajectorySeries parse_plt(std::istream& in) {
  std::string line;
  for (int i = 0; i < 6; ++i) {
    if (!std::getline(in, line)) {
      throw DataError("plt: truncated header (expected six lines)");
    }
  }

  TrajectorySeries series;
  int line_number = 6;
  bool warned_order = false;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split(body, ',');
    if (fields.size() != 7) {
      throw DataError("plt line " + std::to_string(line_number) + ": expected 7 fields, got " +
                      std::to_string(fields.size()));
    }
    const std::string context = "plt line " + std::to_string(line_number);
    const double lat = parse_double(fields[0], context);
    const double lon = parse_double(fields[1], context);
    if (lat < -90.0 || lat > 90.0) {
      throw DataError(context + ": latitude " + fields[0] + " out of range");
    }
    if (lon < -180.0 || lon > 180.0) {
      throw DataError(context + ": longitude " + fields[1] + " out of range");
    }
    const std::int64_t ts = parse_timestamp(trim(fields[5]) + " " + trim(fields[6]));
    if (!series.timestamps.empty() && ts < series.timestamps.back() && !warned_order) {
      std::cerr << "warning: " << context << ": timestamp moves backwards\n";
      warned_order = true;
    }
    series.timestamps.push_back(ts);
    series.latitude.push_back(lat);
    series.longitude.push_back(lon);
  }
  if (series.size() == 0) {
    throw DataError("plt: no track points after the header");
  }
  return series;
}

TrajectorySeries parse_plt_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  return parse_plt(in);
}

TrajectorySeries select_window(const TrajectorySeries& series, std::int64_t start,
                               std::int64_t end) {
  if (start > end) {
    throw DataError("select_window: start is after end");
  }
  TrajectorySeries out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.timestamps[i] >= start && series.timestamps[i] <= end) {
      out.timestamps.push_back(series.timestamps[i]);
      out.latitude.push_back(series.latitude[i]);
      out.longitude.push_back(series.longitude[i]);
    }
  }
  if (out.size() == 0) {
    throw DataError("select_window: no points inside the window");
  }
  return out;
}

NormalizedSeries normalize_minmax(const std::vector<double>& values,
                                  std::string variable) {
  if (values.size() < 2) {
    throw DataError("normalize: need at least two values");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw DataError("normalize: series contains a non-finite value");
    }
  }
  NormalizedSeries out;
  out.variable = std::move(variable);
  out.min = *std::min_element(values.begin(), values.end());
  out.max = *std::max_element(values.begin(), values.end());
  if (!(out.max > out.min)) {
    throw DataError("normalize: constant series has no scale");
  }
  out.values.reserve(values.size());
  const double span = out.max - out.min;
  for (double v : values) {
    out.values.push_back((v - out.min) / span);
  }
  return out;
}

SyntheticKind synthetic_kind_from_string(const std::string& name) {
  if (name == "sine") return SyntheticKind::Sine;
  if (name == "sum_of_sines") return SyntheticKind::SumOfSines;
  if (name == "ramp") return SyntheticKind::Ramp;
  throw DataError("unknown synthetic series kind '" + name + "'");
}

std::string to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::Sine:
      return "sine";
    case SyntheticKind::SumOfSines:
      return "sum_of_sines";
    case SyntheticKind::Ramp:
      return "ramp";
  }
  return "unknown";
}

std::vector<double> gen_synthetic(SyntheticKind kind, int length, std::uint64_t seed) {
  if (length < 2) {
    throw DataError("gen_synthetic: length must be >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(length));
  switch (kind) {
    case SyntheticKind::Sine: {
      for (int t = 0; t < length; ++t) {
        out[static_cast<std::size_t>(t)] =
            0.5 + 0.4 * std::sin(2.0 * M_PI * t / 50.0);
      }
      break;
    }
    case SyntheticKind::SumOfSines: {
      // Two incommensurate tones with seeded phases; the raw sum leaves
      // [0, 1], so it is min-max rescaled like any measured series.
      Rng rng(seed);
      const double phase1 = rng.uniform(0.0, 2.0 * M_PI);
      const double phase2 = rng.uniform(0.0, 2.0 * M_PI);
      const double ratio = std::sqrt(2.0);
      for (int t = 0; t < length; ++t) {
        out[static_cast<std::size_t>(t)] =
            0.5 + 0.4 * std::sin(2.0 * M_PI * t / 50.0 + phase1) +
            0.7 * std::sin(2.0 * M_PI * ratio * t / 50.0 + phase2);
      }
      out = normalize_minmax(out, "synthetic").values;
      break;
    }
    case SyntheticKind::Ramp: {
      for (int t = 0; t < length; ++t) {
        out[static_cast<std::size_t>(t)] =
            static_cast<double>(t) / static_cast<double>(length - 1);
      }
      break;
    }
  }
  return out;
}

std::string serialize_trajectory(const TrajectorySeries& series) {
  std::ostringstream out;
  out << "t,latitude,longitude\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.timestamps[i] << ',' << format_full(series.latitude[i]) << ','
        << format_full(series.longitude[i]) << '\n';
  }
  return out.str();
}

TrajectorySeries parse_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,latitude,longitude") {
    throw DataError("trajectory csv: missing 't,latitude,longitude' header");
  }
  TrajectorySeries series;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split(body, ',');
    const std::string context = "trajectory csv line " + std::to_string(line_number);
    if (fields.size() != 3) {
      throw DataError(context + ": expected 3 fields");
    }
    series.timestamps.push_back(parse_int64(fields[0], context));
    series.latitude.push_back(parse_double(fields[1], context));
    series.longitude.push_back(parse_double(fields[2], context));
  }
  if (series.size() == 0) {
    throw DataError("trajectory csv: no rows");
  }
  return series;
}

void write_series_csv(const std::vector<double>& values, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  out << "t,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << format_full(values[i]) << '\n';
  }
  if (!out) {
    throw DataError("failed writing '" + path + "'");
  }
}

std::vector<double> read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,value") {
    throw DataError("series csv: missing 't,value' header in '" + path + "'");
  }
  std::vector<double> values;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split(body, ',');
    const std::string context = "series csv line " + std::to_string(line_number);
    if (fields.size() != 2) {
      throw DataError(context + ": expected 2 fields");
    }
    values.push_back(parse_double(fields[1], context));
  }
  if (values.empty()) {
    throw DataError("series csv: no rows in '" + path + "'");
  }
  return values;
}

void write_prediction_csv(const PredictionReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  out << "step,truth,prediction\n";
  for (std::size_t i = 0; i < report.predictions.size(); ++i) {
    out << i << ',' << format_full(report.targets[i]) << ','
        << format_full(report.predictions[i]) << '\n';
  }
  if (!out) {
    throw DataError("failed writing '" + path + "'");
  }
}

PredictionReport read_prediction_csv(const std::string& path,
                                     const std::string& method,
                                     const std::string& variable) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || trim(line) != "step,truth,prediction") {
    throw DataError("prediction csv: missing 'step,truth,prediction' header in '" +
                    path + "'");
  }
  std::vector<double> predictions;
  std::vector<double> targets;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split(body, ',');
    const std::string context = "prediction csv line " + std::to_string(line_number);
    if (fields.size() != 3) {
      throw DataError(context + ": expected 3 fields");
    }
    targets.push_back(parse_double(fields[1], context));
    predictions.push_back(parse_double(fields[2], context));
  }
  if (predictions.empty()) {
    throw DataError("prediction csv: no rows in '" + path + "'");
  }
  return make_report(method, variable, PredictionMode::OpenLoop,
                     std::move(predictions), std::move(targets));
}

void write_report(const std::vector<PredictionReport>& reports,
                  const std::string& path) {
  if (reports.empty()) {
    throw std::invalid_argument("write_report: no reports");
  }
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot open '" + path + "' for writing");
  }
  out << "method,variable,mode,mse\n";
  for (const PredictionReport& report : reports) {
    out << report.method << ',' << report.variable << ',' << to_string(report.mode)
        << ',' << format_full(report.mse) << '\n';
  }
  if (!out) {
    throw DataError("failed writing '" + path + "'");
  }

  const std::filesystem::path summary(path);
  const std::filesystem::path dir = summary.parent_path();
  for (const PredictionReport& report : reports) {
    const std::string name =
        report.method + "_" + report.variable + "_" + to_string(report.mode) + ".csv";
    write_prediction_csv(report, (dir / name).string());
  }
}

}  // namespace qrc

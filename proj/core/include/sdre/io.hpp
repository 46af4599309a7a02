// Copyright 2026 The sdre Authors.
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

#ifndef SDRE_IO_HPP_
#define SDRE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sdre/box.hpp"
#include "sdre/dataset.hpp"
#include "sdre/metrics.hpp"
#include "sdre/mse.hpp"
#include "sdre/pipeline.hpp"

namespace sdre {

inline constexpr int kDatasetCsvVersion = 1;
inline constexpr int kBoxFileVersion = 1;
inline constexpr int kTrajectoryCsvVersion = 1;
inline constexpr int kResultCsvVersion = 1;

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

// Dataset CSV: header x1,...,xD,y then one row per point.
void WriteDatasetCsv(std::ostream& out, const Dataset& data);
// Throws kData naming the offending line. The point box is set to the
// bounding box of the rows.
Dataset ReadDatasetCsv(std::istream& in);

struct BoxRecord {
  HyperBox box;
  double val_mean = 0.0;
};

// One box per line: space-separated "i:lower:upper" fields for every
// dimension (i is 0-based), then the validation mean.
void WriteBoxFile(std::ostream& out, std::span<const HyperBox> boxes,
                  std::span<const double> val_means);
std::vector<BoxRecord> ReadBoxFile(std::istream& in);

// box_index,coverage,density,n_train,n_val. Undefined density is "nan".
void WriteTrajectoryCsv(std::ostream& out,
                        std::span<const TrajectoryPoint> points);
std::vector<TrajectoryPoint> ReadTrajectoryCsv(std::istream& in);

// Static density-vs-coverage polyline with axes.
std::string TrajectorySvg(std::span<const TrajectoryPoint> points,
                          const std::string& title);

// One metric table: dgp,size,<method columns>; per size, trailing rows
// avg / #1 / #2.
void WriteMetricCsv(std::ostream& out, const BenchmarkResult& result,
                    Metric metric);
void WriteFailuresCsv(std::ostream& out, const BenchmarkResult& result);
// Per-run records: dgp,size,method,rep,auc,density,restricted,volume.
void WriteRunsCsv(std::ostream& out, const BenchmarkResult& result);

// label,n,k,box,mu_gt,mse_o,mse_am
void WriteMseCsvHeader(std::ostream& out);
void WriteMseCsvRow(std::ostream& out, const std::string& label,
                    const MseReport& report);

// FNV-1a 64-bit of the file contents, as 16 hex digits.
std::string FileChecksum(const std::filesystem::path& path);

}  // namespace sdre

#endif  // SDRE_IO_HPP_

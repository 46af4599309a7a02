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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "sdre/dgp.hpp"
#include "sdre/error.hpp"
#include "sdre/io.hpp"
#include "sdre/random.hpp"
#include "test_util.hpp"

namespace sdre {
namespace {

std::string DataErrorMessage(const std::string& text) {
  std::istringstream in(text);
  try {
    ReadDatasetCsv(in);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << text;
  return "";
}

TEST(FormatDouble, RoundTripsExactly) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(rng.Uniform() - 0.5, static_cast<int>(rng.Below(200)) - 100);
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(DatasetCsv, RoundTrip) {
  const auto& dgp = DgpRegistry::Builtin().Find("ishigami");
  const auto d = GenerateDataset(dgp, 50, Sampler::kLhs, 3);
  std::stringstream ss;
  WriteDatasetCsv(ss, d);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "x1,x2,x3,y");
  const Dataset back = ReadDatasetCsv(ss);
  EXPECT_EQ(back.y, d.y);
  EXPECT_EQ(back.x.data(), d.x.data());
  EXPECT_EQ(back.x.box(), BoundingBox(d.x));
}

TEST(DatasetCsv, AcceptsCrLfAndBlankLines) {
  std::istringstream in("x1,x2,y\r\n0.5,0.25,1\r\n\r\n0.1,0.2,0\r\n");
  const Dataset d = ReadDatasetCsv(in);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.x(1, 1), 0.2);
}

TEST(DatasetCsv, ErrorsNameTheLine) {
  EXPECT_NE(DataErrorMessage("x1,y\n0.1,1\n0.2\n").find("line 3"), std::string::npos);
  EXPECT_NE(DataErrorMessage("x1,y\n0.1,1\nabc,0\n").find("line 3"), std::string::npos);
  EXPECT_NE(DataErrorMessage("x1,y\n0.1,2\n").find("line 2"), std::string::npos);
  EXPECT_NE(DataErrorMessage("x1,x3,y\n0.1,0.2,1\n").find("line 1"), std::string::npos);
  EXPECT_NE(DataErrorMessage("a,b\n").find("line 1"), std::string::npos);
  EXPECT_NE(DataErrorMessage("").find("line 1"), std::string::npos);
  EXPECT_NE(DataErrorMessage("x1,y\n").find("no data"), std::string::npos);
  EXPECT_NE(DataErrorMessage("x1,y\ninf,1\n").find("line 2"), std::string::npos);
}

TEST(BoxFile, RoundTrip) {
  const std::vector<HyperBox> boxes = {HyperBox::Unit(3), HyperBox({0.1, 0, 0.25}, {1, 0.3, 1})};
  const std::vector<double> means = {0.08, 0.9};
  std::stringstream ss;
  WriteBoxFile(ss, boxes, means);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "0:0:1 1:0:1 2:0:1 0.08");
  const auto back = ReadBoxFile(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].box, boxes[1]);
  EXPECT_EQ(back[1].val_mean, 0.9);
}

TEST(BoxFile, Errors) {
  std::istringstream wrong_index("1:0:1 0.5\n");
  EXPECT_THROW(ReadBoxFile(wrong_index), Error);
  std::istringstream short_line("0.5\n");
  EXPECT_THROW(ReadBoxFile(short_line), Error);
  std::istringstream mixed("0:0:1 0.5\n0:0:1 1:0:1 0.5\n");
  EXPECT_THROW(ReadBoxFile(mixed), Error);
}

TEST(TrajectoryCsv, RoundTripWithUndefinedDensity) {
  std::vector<TrajectoryPoint> pts(3);
  pts[0] = {0, 1.0, 0.08, 400, 400};
  pts[1] = {1, 0.7, 0.5, 100, 100};
  pts[2] = {2, 0.0, std::nullopt, 20, 20};
  std::stringstream ss;
  WriteTrajectoryCsv(ss, pts);
  EXPECT_NE(ss.str().find("2,0,nan,20,20"), std::string::npos);
  const auto back = ReadTrajectoryCsv(ss);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[1].coverage, 0.7);
  EXPECT_EQ(back[1].n_train, 100u);
  EXPECT_FALSE(back[2].density.has_value());
  std::istringstream bad("box,coverage\n");
  EXPECT_THROW(ReadTrajectoryCsv(bad), Error);
}

TEST(TrajectorySvg, HasPolylineThroughPoints) {
  std::vector<TrajectoryPoint> pts(2);
  pts[0] = {0, 1.0, 0.0, 0, 0};
  pts[1] = {1, 0.0, 1.0, 0, 0};
  const auto svg = TrajectorySvg(pts, "a<b");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("points=\"350.00,350.00 50.00,50.00\""), std::string::npos);
  EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
}

BenchmarkResult TwoDgpResult() {
  BenchmarkResult r;
  r.methods = {Method::kO, Method::kRFp};
  r.dgps = {"a", "b"};
  r.sizes = {400};
  double v = 10;
  for (const auto& dgp : r.dgps) {
    for (Method m : r.methods) {
      CellResult c;
      c.dgp = dgp;
      c.size = 400;
      c.method = m;
      c.runs_ok = 2;
      c.auc = v;
      v += 10;
      RunMetrics run;
      run.auc = 0.5;
      run.rep = 1;
      c.runs.push_back(run);
      r.cells.push_back(c);
    }
  }
  r.failures.push_back({"a", 400, "O", 0, "boom \"x\""});
  return r;
}

TEST(MetricCsv, Layout) {
  std::stringstream ss;
  WriteMetricCsv(ss, TwoDgpResult(), Metric::kAuc);
  EXPECT_EQ(ss.str(),
            "dgp,size,O,RF.p\n"
            "a,400,10,20\n"
            "b,400,30,40\n"
            "avg,400,20,30\n"
            "#1,400,0,2\n"
            "#2,400,2,0\n");
}

TEST(FailuresCsv, QuotesMessages) {
  std::stringstream ss;
  WriteFailuresCsv(ss, TwoDgpResult());
  EXPECT_EQ(ss.str(), "dgp,size,method,rep,message\na,400,O,0,\"boom 'x'\"\n");
}

TEST(RunsCsv, OneRowPerRun) {
  std::stringstream ss;
  WriteRunsCsv(ss, TwoDgpResult());
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "dgp,size,method,rep,auc,density,restricted,volume");
  std::getline(ss, line);
  EXPECT_EQ(line, "a,400,O,1,0.5,nan,0,0");
}

TEST(MseCsv, Row) {
  MseReport r;
  r.box_b = HyperBox({0, 0.95}, {1, 1});
  r.n = 400;
  r.k = 100000;
  r.mu_gt = 0.08;
  r.mse_o = 0.5;
  r.mse_am = 0.25;
  std::stringstream ss;
  WriteMseCsvHeader(ss);
  WriteMseCsvRow(ss, "K=1e5", r);
  EXPECT_EQ(ss.str(), "label,n,k,box,mu_gt,mse_o,mse_am\nK=1e5,400,100000,0:0:1 1:0.95:1,0.08,0.5,0.25\n");
}

TEST(FileChecksum, Fnv1aOfContents) {
  const auto path = std::filesystem::temp_directory_path() / "sdre_io_test_checksum.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "a";
  }
  EXPECT_EQ(FileChecksum(path), "af63dc4c8601ec8c");
  std::filesystem::remove(path);
  EXPECT_THROW(FileChecksum(path), Error);
}

}  // namespace
}  // namespace sdre

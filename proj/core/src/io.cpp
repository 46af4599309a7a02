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

#include "sdre/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "sdre/error.hpp"
#include "sdre/random.hpp"

namespace sdre {

namespace {

std::vector<std::string> SplitFields(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool ParseDouble(std::string_view text, double* out) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "nan") {
    *out = std::nan("");
    return true;
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool ParseSize(std::string_view text, std::size_t* out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size() && !text.empty();
}

[[noreturn]] void DataError(std::size_t line, const std::string& what) {
  Fail(ErrorKind::kData, "line " + std::to_string(line) + ": " + what);
}

std::string FormatOptional(std::optional<double> v) {
  return v ? FormatDouble(*v) : std::string("nan");
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteDatasetCsv(std::ostream& out, const Dataset& data) {
  for (std::size_t c = 0; c < data.dims(); ++c) out << 'x' << c + 1 << ',';
  out << "y\n";
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t c = 0; c < data.dims(); ++c) out << FormatDouble(data.x(r, c)) << ',';
    out << FormatDouble(data.y[r]) << '\n';
  }
}

Dataset ReadDatasetCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) DataError(1, "missing header");
  StripCr(line);
  const auto header = SplitFields(line, ',');
  if (header.size() < 2 || header.back() != "y") {
    DataError(1, "header must be x1,...,xD,y");
  }
  for (std::size_t c = 0; c + 1 < header.size(); ++c) {
    if (header[c] != "x" + std::to_string(c + 1)) {
      DataError(1, "header column " + std::to_string(c + 1) + " must be x" +
                       std::to_string(c + 1));
    }
  }
  const std::size_t dims = header.size() - 1;
  PointMatrix x(0, dims);
  std::vector<double> y;
  std::vector<double> row(dims);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.empty()) continue;
    const auto fields = SplitFields(line, ',');
    if (fields.size() != dims + 1) {
      DataError(line_no, "expected " + std::to_string(dims + 1) + " fields, got " +
                             std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < dims; ++c) {
      if (!ParseDouble(fields[c], &row[c]) || !std::isfinite(row[c])) {
        DataError(line_no, "bad number '" + fields[c] + "'");
      }
    }
    double label = 0.0;
    if (!ParseDouble(fields[dims], &label) || !(label >= 0.0 && label <= 1.0)) {
      DataError(line_no, "label must be a number in [0, 1]");
    }
    x.AppendRow(row);
    y.push_back(label);
  }
  if (y.empty()) DataError(line_no, "no data rows");
  x.set_box(BoundingBox(x));
  return Dataset(std::move(x), std::move(y));
}

void WriteBoxFile(std::ostream& out, std::span<const HyperBox> boxes,
                  std::span<const double> val_means) {
  for (std::size_t j = 0; j < boxes.size(); ++j) {
    const HyperBox& b = boxes[j];
    for (std::size_t i = 0; i < b.dims(); ++i) {
      out << i << ':' << FormatDouble(b.lower[i]) << ':' << FormatDouble(b.upper[i]) << ' ';
    }
    out << (j < val_means.size() ? FormatDouble(val_means[j]) : std::string("nan")) << '\n';
  }
}

std::vector<BoxRecord> ReadBoxFile(std::istream& in) {
  std::vector<BoxRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.empty()) continue;
    auto fields = SplitFields(line, ' ');
    fields.erase(std::remove(fields.begin(), fields.end(), std::string()), fields.end());
    if (fields.size() < 2) DataError(line_no, "box line needs bounds and a mean");
    BoxRecord rec;
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      const auto parts = SplitFields(fields[i], ':');
      std::size_t dim = 0;
      double lo = 0.0, hi = 0.0;
      if (parts.size() != 3 || !ParseSize(parts[0], &dim) || dim != i ||
          !ParseDouble(parts[1], &lo) || !ParseDouble(parts[2], &hi)) {
        DataError(line_no, "bad bound field '" + fields[i] + "'");
      }
      rec.box.lower.push_back(lo);
      rec.box.upper.push_back(hi);
    }
    if (!ParseDouble(fields.back(), &rec.val_mean)) {
      DataError(line_no, "bad validation mean '" + fields.back() + "'");
    }
    if (!out.empty() && out.front().box.dims() != rec.box.dims()) {
      DataError(line_no, "box dimension differs from the first box");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void WriteTrajectoryCsv(std::ostream& out, std::span<const TrajectoryPoint> points) {
  out << "box_index,coverage,density,n_train,n_val\n";
  for (const auto& p : points) {
    out << p.box_index << ',' << FormatDouble(p.coverage) << ',' << FormatOptional(p.density)
        << ',' << p.n_train << ',' << p.n_val << '\n';
  }
}

std::vector<TrajectoryPoint> ReadTrajectoryCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) DataError(1, "missing header");
  StripCr(line);
  if (line != "box_index,coverage,density,n_train,n_val") DataError(1, "unexpected header");
  std::vector<TrajectoryPoint> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.empty()) continue;
    const auto f = SplitFields(line, ',');
    TrajectoryPoint p;
    double density = 0.0;
    if (f.size() != 5 || !ParseSize(f[0], &p.box_index) || !ParseDouble(f[1], &p.coverage) ||
        !ParseDouble(f[2], &density) || !ParseSize(f[3], &p.n_train) ||
        !ParseSize(f[4], &p.n_val)) {
      DataError(line_no, "malformed trajectory row");
    }
    if (!std::isnan(density)) p.density = density;
    out.push_back(p);
  }
  return out;
}

std::string TrajectorySvg(std::span<const TrajectoryPoint> points, const std::string& title) {
  constexpr double kSize = 400.0, kMargin = 50.0;
  const double plot = kSize - 2 * kMargin;
  const auto px = [&](double c) { return kMargin + c * plot; };
  const auto py = [&](double d) { return kSize - kMargin - d * plot; };
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
      << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kSize / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"14\">"
      << XmlEscape(title) << "</text>\n";
  // axes with ticks at 0, 0.5, 1
  svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
      << py(0) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
      << py(1) << "\" stroke=\"black\"/>\n";
  for (double t : {0.0, 0.5, 1.0}) {
    svg << "<text x=\"" << px(t) << "\" y=\"" << py(0) + 15
        << "\" text-anchor=\"middle\" font-size=\"10\">" << t << "</text>\n";
    svg << "<text x=\"" << px(0) - 8 << "\" y=\"" << py(t) + 3
        << "\" text-anchor=\"end\" font-size=\"10\">" << t << "</text>\n";
  }
  svg << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">coverage</text>\n";
  svg << "<text x=\"14\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
      << "transform=\"rotate(-90 14 " << kSize / 2 << ")\">density</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (const auto& p : points) {
    if (!p.density) continue;
    svg << (first ? "" : " ") << px(std::clamp(p.coverage, 0.0, 1.0)) << ','
        << py(std::clamp(*p.density, 0.0, 1.0));
    first = false;
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

void WriteMetricCsv(std::ostream& out, const BenchmarkResult& result, Metric metric) {
  out << "dgp,size";
  for (Method m : result.methods) out << ',' << MethodName(m);
  out << '\n';
  for (std::size_t size : result.sizes) {
    for (const auto& dgp : result.dgps) {
      out << dgp << ',' << size;
      for (Method m : result.methods) {
        const CellResult* c = result.Find(dgp, size, m);
        const bool ok = c && c->runs_ok > 0;
        out << ',' << (ok ? FormatDouble(c->Value(metric)) : std::string("nan"));
      }
      out << '\n';
    }
    out << "avg," << size;
    for (Method m : result.methods) out << ',' << FormatDouble(result.Average(metric, size, m));
    out << "\n#1," << size;
    for (Method m : result.methods) out << ',' << result.Ranks(metric, size, m).first;
    out << "\n#2," << size;
    for (Method m : result.methods) out << ',' << result.Ranks(metric, size, m).second;
    out << '\n';
  }
}

void WriteFailuresCsv(std::ostream& out, const BenchmarkResult& result) {
  out << "dgp,size,method,rep,message\n";
  for (const auto& f : result.failures) {
    std::string msg = f.message;
    std::replace(msg.begin(), msg.end(), '"', '\'');
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    out << f.dgp << ',' << f.size << ',' << f.method << ',' << f.rep << ",\"" << msg << "\"\n";
  }
}

void WriteRunsCsv(std::ostream& out, const BenchmarkResult& result) {
  out << "dgp,size,method,rep,auc,density,restricted,volume\n";
  for (const auto& c : result.cells) {
    for (std::size_t r = 0; r < c.runs.size(); ++r) {
      const RunMetrics& m = c.runs[r];
      out << c.dgp << ',' << c.size << ',' << MethodName(c.method) << ',' << m.rep << ','
          << FormatDouble(m.auc) << ',' << FormatOptional(m.density) << ',' << m.restricted
          << ',' << FormatDouble(m.volume_fraction) << '\n';
    }
  }
}

void WriteMseCsvHeader(std::ostream& out) { out << "label,n,k,box,mu_gt,mse_o,mse_am\n"; }

void WriteMseCsvRow(std::ostream& out, const std::string& label, const MseReport& report) {
  std::ostringstream box;
  for (std::size_t i = 0; i < report.box_b.dims(); ++i) {
    box << (i ? " " : "") << i << ':' << FormatDouble(report.box_b.lower[i]) << ':'
        << FormatDouble(report.box_b.upper[i]);
  }
  out << label << ',' << report.n << ',' << report.k << ',' << box.str() << ','
      << FormatDouble(report.mu_gt) << ',' << FormatDouble(report.mse_o) << ','
      << FormatDouble(report.mse_am) << '\n';
}

std::string FileChecksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kData, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << HashName(buf.str());
  return hex.str();
}

}  // namespace sdre

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

#include "sdre/forest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "sdre/error.hpp"
#include "sdre/parallel.hpp"
#include "sdre/random.hpp"

namespace sdre {

std::size_t ForestConfig::ResolvedMtry(std::size_t dims) const {
  std::size_t m = mtry;
  if (m == 0) m = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(dims))));
  return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(dims, 1));
}

double Tree::Predict(std::span<const double> x) const {
  std::uint32_t i = 0;
  while (nodes_[i].feature >= 0) {
    const Node& n = nodes_[i];
    i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes_[i].value;
}

namespace {

constexpr const char* kForestMagic = "sdre-forest";
constexpr int kForestFormat = 1;

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& d, std::size_t mtry, std::size_t min_node, Rng& rng)
      : d_(d), mtry_(mtry), min_node_(min_node), rng_(rng),
        features_(d.dims()) {
    for (std::size_t k = 0; k < features_.size(); ++k) features_[k] = k;
  }

  std::vector<Tree::Node> Build(std::vector<std::size_t> samples) {
    nodes_.clear();
    samples_ = std::move(samples);
    Grow(0, samples_.size());
    return std::move(nodes_);
  }

 private:
  struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = 0.0;
  };

  std::uint32_t Grow(std::size_t begin, std::size_t end) {
    double pos = 0.0;
    for (std::size_t i = begin; i < end; ++i) pos += d_.y[samples_[i]];
    const double total = static_cast<double>(end - begin);
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({});
    nodes_[id].value = pos / total;
    const double neg = total - pos;
    if (end - begin <= min_node_ || pos <= 0.0 || neg <= 0.0) return id;

    const Split split = BestSplit(begin, end);
    if (!split.found) return id;
    const auto mid = std::partition(
        samples_.begin() + static_cast<std::ptrdiff_t>(begin),
        samples_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t s) {
          return d_.x(s, split.feature) <= split.threshold;
        });
    const auto m = static_cast<std::size_t>(mid - samples_.begin());
    nodes_[id].feature = static_cast<int>(split.feature);
    nodes_[id].threshold = split.threshold;
    const std::uint32_t left = Grow(begin, m);
    const std::uint32_t right = Grow(m, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  // Visits features in random order until mtry non-constant ones were
  // examined, so constant features never waste a draw.
  Split BestSplit(std::size_t begin, std::size_t end) {
    Split best;
    std::size_t examined = 0;
    const std::size_t n = end - begin;
    for (std::size_t j = 0; j < features_.size() && examined < mtry_; ++j) {
      std::swap(features_[j], features_[j + rng_.Below(features_.size() - j)]);
      const std::size_t k = features_[j];
      pairs_.clear();
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t s = samples_[i];
        pairs_.emplace_back(d_.x(s, k), d_.y[s]);
      }
      std::sort(pairs_.begin(), pairs_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (pairs_.front().first == pairs_.back().first) continue;
      ++examined;
      double total_pos = 0.0;
      for (const auto& p : pairs_) total_pos += p.second;
      double left_pos = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_pos += pairs_[i].second;
        if (pairs_[i].first == pairs_[i + 1].first) continue;
        const double nl = static_cast<double>(i + 1);
        const double nr = static_cast<double>(n) - nl;
        const double right_pos = total_pos - left_pos;
        // weighted Gini up to a constant factor
        const double score = left_pos * (nl - left_pos) / nl +
                             right_pos * (nr - right_pos) / nr;
        if (!best.found || score < best.score) {
          best.found = true;
          best.score = score;
          best.feature = k;
          best.threshold = 0.5 * (pairs_[i].first + pairs_[i + 1].first);
          // midpoint may round onto the upper value for adjacent doubles
          if (best.threshold >= pairs_[i + 1].first) best.threshold = pairs_[i].first;
        }
      }
    }
    return best;
  }

  const Dataset& d_;
  std::size_t mtry_;
  std::size_t min_node_;
  Rng& rng_;
  std::vector<std::size_t> features_;
  std::vector<std::size_t> samples_;
  std::vector<std::pair<double, double>> pairs_;
  std::vector<Tree::Node> nodes_;
};

}  // namespace

Forest fit(const Dataset& d, const ForestConfig& cfg) {
  if (d.size() == 0 || d.dims() == 0) Fail(ErrorKind::kData, "fit: empty dataset");
  if (cfg.n_trees < 1) Fail(ErrorKind::kInvalidConfig, "n_trees must be positive");
  if (cfg.min_node < 1) Fail(ErrorKind::kInvalidConfig, "min_node must be positive");
  if (cfg.mtry > d.dims()) Fail(ErrorKind::kInvalidConfig, "mtry exceeds the dimension");
  for (double v : d.y) {
    if (!(v >= 0.0 && v <= 1.0)) Fail(ErrorKind::kInvalidLabel, "labels must lie in [0, 1]");
  }

  Forest f;
  f.config_ = cfg;
  f.config_.mtry = cfg.ResolvedMtry(d.dims());
  f.dims_ = d.dims();

  const double pos = [&] {
    double s = 0.0;
    for (double v : d.y) s += v;
    return s;
  }();
  if (pos <= 0.0 || pos >= static_cast<double>(d.size())) {
    Tree::Node leaf;
    leaf.value = pos / static_cast<double>(d.size());
    f.trees_.assign(cfg.n_trees, Tree({leaf}));
    f.degenerate_ = true;
    return f;
  }

  const std::size_t n = d.size();
  f.trees_.resize(cfg.n_trees);
  std::vector<std::vector<char>> in_bag(cfg.n_trees);
  ParallelFor(cfg.n_trees, Parallelism(), [&](std::size_t t) {
    Rng rng(DeriveSeed(cfg.seed, {t}));
    std::vector<std::size_t> samples(n);
    in_bag[t].assign(n, 0);
    for (auto& s : samples) {
      s = rng.Below(n);
      in_bag[t][s] = 1;
    }
    TreeBuilder builder(d, f.config_.mtry, cfg.min_node, rng);
    f.trees_[t] = Tree(builder.Build(std::move(samples)));
  });

  std::size_t counted = 0, wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    std::size_t votes = 0;
    for (std::size_t t = 0; t < cfg.n_trees; ++t) {
      if (in_bag[t][i]) continue;
      sum += f.trees_[t].Predict(d.x.row(i));
      ++votes;
    }
    if (votes == 0) continue;
    ++counted;
    const bool predicted = sum / static_cast<double>(votes) >= 0.5;
    if (predicted != (d.y[i] >= 0.5)) ++wrong;
  }
  f.oob_error_ = counted ? static_cast<double>(wrong) / static_cast<double>(counted) : 0.0;
  return f;
}

std::vector<std::size_t> DefaultMtryGrid(std::size_t dims) {
  std::vector<std::size_t> grid = {
      static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(dims)))),
      dims / 2, dims};
  for (auto& m : grid) m = std::max<std::size_t>(m, 1);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ForestConfig tune_mtry(const Dataset& d, std::span<const std::size_t> grid,
                       const ForestConfig& cfg) {
  if (grid.empty()) Fail(ErrorKind::kInvalidConfig, "mtry grid is empty");
  std::vector<std::size_t> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 1 || sorted.back() > d.dims()) {
    Fail(ErrorKind::kInvalidConfig, "mtry grid values must lie in [1, D]");
  }
  ForestConfig best = cfg;
  best.mtry = sorted.front();
  if (sorted.size() == 1) return best;
  double best_err = 2.0;
  for (std::size_t m : sorted) {
    ForestConfig trial = cfg;
    trial.mtry = m;
    const double err = fit(d, trial).oob_error();
    if (err < best_err) {
      best_err = err;
      best = trial;
    }
  }
  return best;
}

std::vector<double> predict_proba(const Forest& f, const PointMatrix& points) {
  if (points.cols() != f.dims()) {
    Fail(ErrorKind::kShape, "forest expects " + std::to_string(f.dims()) +
                                " inputs, got " + std::to_string(points.cols()));
  }
  const std::size_t n = points.rows();
  std::vector<double> out(n, 0.0);
  if (f.trees().empty()) return out;
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  ParallelFor(chunks, Parallelism(), [&](std::size_t c) {
    const std::size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    for (const Tree& tree : f.trees()) {
      for (std::size_t i = lo; i < hi; ++i) out[i] += tree.Predict(points.row(i));
    }
  });
  const double inv = 1.0 / static_cast<double>(f.trees().size());
  for (double& v : out) v = std::clamp(v * inv, 0.0, 1.0);
  return out;
}

std::vector<double> predict_label(const Forest& f, const PointMatrix& points) {
  auto p = predict_proba(f, points);
  for (double& v : p) v = v >= 0.5 ? 1.0 : 0.0;
  return p;
}

void Forest::Save(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  out << kForestMagic << ' ' << kForestFormat << '\n';
  out << dims_ << ' ' << trees_.size() << ' ' << config_.mtry << ' ' << config_.min_node
      << ' ' << config_.seed << ' ' << oob_error_ << ' ' << (degenerate_ ? 1 : 0) << '\n';
  for (const Tree& t : trees_) {
    out << t.nodes().size() << '\n';
    for (const auto& node : t.nodes()) {
      out << node.feature << ' ' << node.threshold << ' ' << node.left << ' '
          << node.right << ' ' << node.value << '\n';
    }
  }
  out.precision(old_precision);
}

Forest Forest::Load(std::istream& in) {
  std::string magic;
  int format = 0;
  if (!(in >> magic >> format) || magic != kForestMagic || format != kForestFormat) {
    Fail(ErrorKind::kData, "not a forest file or unsupported format version");
  }
  Forest f;
  std::size_t n_trees = 0;
  int degenerate = 0;
  if (!(in >> f.dims_ >> n_trees >> f.config_.mtry >> f.config_.min_node >>
        f.config_.seed >> f.oob_error_ >> degenerate)) {
    Fail(ErrorKind::kData, "forest header is malformed");
  }
  f.config_.n_trees = n_trees;
  f.degenerate_ = degenerate != 0;
  f.trees_.reserve(n_trees);
  for (std::size_t t = 0; t < n_trees; ++t) {
    std::size_t count = 0;
    if (!(in >> count) || count == 0) Fail(ErrorKind::kData, "forest tree record is malformed");
    std::vector<Tree::Node> nodes(count);
    for (std::size_t k = 0; k < count; ++k) {
      auto& node = nodes[k];
      if (!(in >> node.feature >> node.threshold >> node.left >> node.right >> node.value)) {
        Fail(ErrorKind::kData, "forest node record is malformed");
      }
      if (node.feature >= static_cast<int>(f.dims_) ||
          (node.feature >= 0 && (node.left <= k || node.right <= k ||
                                  node.left >= count || node.right >= count))) {
        Fail(ErrorKind::kData, "forest node references are out of range");
      }
    }
    f.trees_.emplace_back(std::move(nodes));
  }
  return f;
}

}  // namespace sdre

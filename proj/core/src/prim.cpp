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

#include "sdre/prim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sdre/error.hpp"
#include "sdre/metrics.hpp"
#include "sdre/parallel.hpp"
#include "sdre/random.hpp"

namespace sdre {

void PeelConfig::Validate(std::size_t total_dims) const {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    Fail(ErrorKind::kInvalidConfig, "alpha must lie in (0, 0.5)");
  }
  if (minpts < 1) Fail(ErrorKind::kInvalidConfig, "minpts must be at least 1");
  std::vector<std::size_t> sorted = dims;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    Fail(ErrorKind::kInvalidConfig, "peel dimensions contain duplicates");
  }
  if (!sorted.empty() && sorted.back() >= total_dims) {
    Fail(ErrorKind::kInvalidConfig, "peel dimension out of range");
  }
}

namespace {

double MeanOf(const std::vector<double>& y) {
  if (y.empty()) return 0.0;
  return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
}

// Column-major copy of the points still inside the box.
struct Columns {
  std::vector<std::vector<double>> x;
  std::vector<double> y;

  Columns(const Dataset& d) : x(d.dims()), y(d.y) {
    for (std::size_t c = 0; c < d.dims(); ++c) {
      x[c].resize(d.size());
      for (std::size_t r = 0; r < d.size(); ++r) x[c][r] = d.x(r, c);
    }
  }
  std::size_t size() const { return y.size(); }

  // Keeps the points inside [lo, hi] on dimension `dim`.
  void Filter(std::size_t dim, double lo, double hi) {
    std::size_t w = 0;
    const auto& col = x[dim];
    std::vector<char> keep(size());
    for (std::size_t i = 0; i < size(); ++i) keep[i] = col[i] >= lo && col[i] <= hi;
    for (auto& c : x) {
      w = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (keep[i]) c[w++] = c[i];
      }
      c.resize(w);
    }
    w = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (keep[i]) y[w++] = y[i];
    }
    y.resize(w);
  }
};

}  // namespace

BoxSequence peel(const Dataset& d, const Dataset& d_val, const HyperBox& box0,
                 const PeelConfig& cfg, std::vector<PeelStep>* trace) {
  box0.Validate();
  if (d.dims() != box0.dims() || d_val.dims() != box0.dims()) {
    Fail(ErrorKind::kShape, "peel: dataset and box0 dimensions differ");
  }
  cfg.Validate(box0.dims());
  if (d_val.size() == 0) Fail(ErrorKind::kValidationUndefined, "peel: empty validation set");

  std::vector<std::size_t> dims = cfg.dims;
  if (dims.empty()) {
    dims.resize(box0.dims());
    std::iota(dims.begin(), dims.end(), 0);
  }
  std::sort(dims.begin(), dims.end());

  BoxSequence seq;
  seq.boxes.push_back(box0);
  seq.val_means.push_back(MeanOf(d_val.y));
  seq.n_train.push_back(d.size());
  seq.n_val.push_back(d_val.size());
  if (trace) trace->clear();

  Columns train(d);
  Columns val(d_val);
  HyperBox box = box0;
  std::vector<double> scratch;

  for (std::size_t iter = 0; iter < cfg.max_iter; ++iter) {
    if (train.size() <= cfg.minpts || val.size() <= cfg.minpts) break;
    const std::size_t n = train.size();
    const auto keep = static_cast<std::size_t>(
        std::ceil((1.0 - cfg.alpha) * static_cast<double>(n) - 1e-9));
    if (keep >= n) break;
    const std::size_t cut = n - keep;

    PeelStep step;
    bool found = false;
    PeelStep::Candidate best{};
    double best_threshold = 0.0;
    for (std::size_t k : dims) {
      const auto& col = train.x[k];
      for (bool top : {true, false}) {
        scratch.assign(col.begin(), col.end());
        const std::size_t rank = top ? keep - 1 : cut;
        std::nth_element(scratch.begin(), scratch.begin() + rank, scratch.end());
        const double thr = scratch[rank];
        double sum = 0.0;
        std::size_t retained = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (top ? col[i] <= thr : col[i] >= thr) {
            sum += train.y[i];
            ++retained;
          }
        }
        if (retained == n || retained == 0) continue;  // cut removes nothing
        const PeelStep::Candidate cand{k, top, retained,
                                       sum / static_cast<double>(retained)};
        step.candidates.push_back(cand);
        if (!found || cand.mean > best.mean) {
          best = cand;
          best_threshold = thr;
          step.chosen = step.candidates.size() - 1;
          found = true;
        }
      }
    }
    if (!found) break;

    // adjust(): the peeled bound moves onto the retained data
    if (best.top) {
      box.upper[best.dim] = best_threshold;
    } else {
      box.lower[best.dim] = best_threshold;
    }
    train.Filter(best.dim, box.lower[best.dim], box.upper[best.dim]);
    val.Filter(best.dim, box.lower[best.dim], box.upper[best.dim]);
    if (trace) trace->push_back(std::move(step));
    if (val.size() == 0) break;

    seq.boxes.push_back(box);
    seq.val_means.push_back(MeanOf(val.y));
    seq.n_train.push_back(train.size());
    seq.n_val.push_back(val.size());
  }

  const auto best_it = std::max_element(seq.val_means.begin(), seq.val_means.end());
  seq.selected_index = static_cast<std::size_t>(best_it - seq.val_means.begin());
  const std::size_t len = seq.selected_index + 1;
  seq.boxes.resize(len);
  seq.val_means.resize(len);
  seq.n_train.resize(len);
  seq.n_val.resize(len);
  return seq;
}

HyperBox paste(const Dataset& d, const HyperBox& box, const HyperBox& box0,
               double beta, std::uint64_t seed) {
  box.Validate();
  box0.Validate();
  if (box.dims() != box0.dims() || d.dims() != box0.dims()) {
    Fail(ErrorKind::kShape, "paste: dimensions differ");
  }
  if (!(beta > 0.0)) Fail(ErrorKind::kInvalidConfig, "beta must be positive");
  if (!box.Within(box0)) Fail(ErrorKind::kInvalidBox, "paste: box is not inside box0");

  struct Stats {
    double mean = 0.0;
    std::size_t count = 0;
  };
  const auto stats_in = [&](const HyperBox& b) {
    Stats st;
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (b.Contains(d.x.row(i))) {
        sum += d.y[i];
        ++st.count;
      }
    }
    if (st.count) st.mean = sum / static_cast<double>(st.count);
    return st;
  };

  Rng rng(seed);
  HyperBox current = box;
  Stats current_stats = stats_in(current);
  std::vector<std::pair<HyperBox, Stats>> admissible;
  for (;;) {
    admissible.clear();
    for (std::size_t k = 0; k < current.dims(); ++k) {
      const double grow = beta * current.width(k);
      for (bool upper : {false, true}) {
        HyperBox next = current;
        if (upper) {
          next.upper[k] = std::min(box0.upper[k], current.upper[k] + grow);
          if (next.upper[k] <= current.upper[k]) continue;
        } else {
          next.lower[k] = std::max(box0.lower[k], current.lower[k] - grow);
          if (next.lower[k] >= current.lower[k]) continue;
        }
        // must take in data and keep the mean from dropping; slabs holding
        // no point would otherwise let the box drift through empty space
        const Stats st = stats_in(next);
        if (st.count > current_stats.count && st.mean >= current_stats.mean) {
          admissible.emplace_back(std::move(next), st);
        }
      }
    }
    if (admissible.empty()) return current;
    auto& chosen = admissible[rng.Below(admissible.size())];
    current = std::move(chosen.first);
    current_stats = chosen.second;
  }
}

std::vector<BumpedBox> bumping(const Dataset& d, const Dataset& d_val,
                               const HyperBox& box0, const PeelConfig& cfg,
                               const BumpingOptions& options) {
  const std::size_t dims = box0.dims();
  if (options.attributes < 1 || options.attributes > dims) {
    Fail(ErrorKind::kInvalidConfig,
         "bumping: t must lie in [1, " + std::to_string(dims) + "]");
  }
  if (options.iterations < 1) Fail(ErrorKind::kInvalidConfig, "bumping: T must be positive");
  if (d.dims() != dims || d_val.dims() != dims) {
    Fail(ErrorKind::kShape, "bumping: dataset and box0 dimensions differ");
  }

  std::vector<BoxSequence> runs(options.iterations);
  ParallelFor(options.iterations, Parallelism(), [&](std::size_t run) {
    Rng rng(DeriveSeed(cfg.seed, {run}));
    PeelConfig run_cfg = cfg;
    run_cfg.dims = rng.Subset(dims, options.attributes);
    if (options.bootstrap) {
      std::vector<std::size_t> idx(d.size());
      for (auto& i : idx) i = rng.Below(d.size());
      runs[run] = peel(d.Select(idx), d_val, box0, run_cfg);
    } else {
      runs[run] = peel(d, d_val, box0, run_cfg);
    }
  });

  std::vector<BumpedBox> pool;
  for (std::size_t run = 0; run < runs.size(); ++run) {
    for (std::size_t j = 0; j < runs[run].size(); ++j) {
      const HyperBox& b = runs[run].boxes[j];
      const bool seen = std::any_of(pool.begin(), pool.end(),
                                    [&](const BumpedBox& p) { return p.box == b; });
      if (seen) continue;
      const auto cd = coverage_density(b, d_val);
      if (!cd.density) continue;
      pool.push_back({b, cd.coverage, *cd.density, run, j});
    }
  }

  std::vector<Quality> q;
  q.reserve(pool.size());
  for (const auto& p : pool) q.push_back({p.coverage, p.density});
  std::vector<BumpedBox> front;
  for (std::size_t i : pareto_front(q)) front.push_back(pool[i]);
  std::stable_sort(front.begin(), front.end(), [](const BumpedBox& a, const BumpedBox& b) {
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    return a.density > b.density;
  });
  return front;
}

}  // namespace sdre

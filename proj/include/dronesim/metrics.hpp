// Copyright 2026 The dronesim Authors
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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dronesim/drone.hpp"
#include "dronesim/errors.hpp"

namespace dronesim {

/// counts[true][predicted].
using ConfusionMatrix = std::array<std::array<std::uint64_t, kCommandCount>, kCommandCount>;

struct LabelScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool present = false;  // appears among the true labels or the predictions
};

struct MetricsReport {
  ConfusionMatrix confusion{};
  std::array<LabelScores, kCommandCount> per_label{};
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  std::uint64_t total = 0;
};

/// Per-label scores from a confusion matrix. Zero denominators give zero.
/// The macro average runs over labels that occur in either the truth or the
/// predictions; a label nobody used says nothing about the classifier.
inline MetricsReport metrics_from_confusion(const ConfusionMatrix& m) {
  MetricsReport r;
  r.confusion = m;
  std::uint64_t trace = 0;
  for (std::size_t i = 0; i < kCommandCount; ++i) {
    trace += m[i][i];
    for (std::size_t j = 0; j < kCommandCount; ++j) r.total += m[i][j];
  }
  std::size_t present = 0;
  double f1_sum = 0.0;
  for (std::size_t x = 0; x < kCommandCount; ++x) {
    std::uint64_t row = 0, col = 0;
    for (std::size_t k = 0; k < kCommandCount; ++k) {
      row += m[x][k];
      col += m[k][x];
    }
    LabelScores& s = r.per_label[x];
    const double tp = static_cast<double>(m[x][x]);
    s.precision = col == 0 ? 0.0 : tp / static_cast<double>(col);
    s.recall = row == 0 ? 0.0 : tp / static_cast<double>(row);
    const double pr = s.precision + s.recall;
    s.f1 = pr == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / pr;
    s.present = row + col > 0;
    if (s.present) {
      ++present;
      f1_sum += s.f1;
    }
  }
  r.macro_f1 = present == 0 ? 0.0 : f1_sum / static_cast<double>(present);
  r.accuracy = r.total == 0 ? 0.0 : static_cast<double>(trace) / static_cast<double>(r.total);
  return r;
}

inline MetricsReport confusion_and_macro_f1(std::span<const std::uint8_t> predictions,
                                            std::span<const std::uint8_t> labels) {
  if (predictions.size() != labels.size() || labels.empty()) {
    throw InvalidArgument("predictions and labels must be equal-length and nonempty");
  }
  ConfusionMatrix m{};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= kCommandCount || predictions[i] >= kCommandCount) {
      throw InvalidArgument("label code out of range");
    }
    ++m[labels[i]][predictions[i]];
  }
  return metrics_from_confusion(m);
}

/// Loss weights: majority share divided by each label's share. Counts and
/// percentages give the same result since only ratios matter.
inline std::array<double, kCommandCount> label_weights(
    const std::array<double, kCommandCount>& amounts) {
  double majority = 0.0;
  for (double a : amounts) {
    if (!(a > 0.0)) throw InvalidArgument("every label needs a positive share");
    majority = std::max(majority, a);
  }
  std::array<double, kCommandCount> w{};
  for (std::size_t i = 0; i < kCommandCount; ++i) w[i] = majority / amounts[i];
  return w;
}

inline std::array<double, kCommandCount> label_weights(
    const std::array<std::uint64_t, kCommandCount>& counts) {
  std::array<double, kCommandCount> a{};
  for (std::size_t i = 0; i < kCommandCount; ++i) a[i] = static_cast<double>(counts[i]);
  return label_weights(a);
}

}  // namespace dronesim

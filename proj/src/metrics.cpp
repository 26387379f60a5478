#include "graphdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "graphdr/error.hpp"

namespace graphdr {

double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(Errc::LengthMismatch, "auroc: " + std::to_string(scores.size()) + " scores vs " +
                                          std::to_string(labels.size()) + " labels");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of (1-based, tie-averaged) ranks of the positives, kept doubled so
  // the accumulation stays in integers.
  std::size_t n_pos = 0;
  unsigned long long doubled_rank_sum = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Ranks i+1 .. j+1 share their average (i + j + 2) / 2.
    const unsigned long long doubled_avg = i + j + 2;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] != 0) {
        ++n_pos;
        doubled_rank_sum += doubled_avg;
      }
    }
    i = j + 1;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(Errc::SingleClass, "auroc needs both positive and negative labels");
  }
  // 2U = 2 * rank_sum - n_pos * (n_pos + 1)
  const unsigned long long doubled_u =
      doubled_rank_sum - static_cast<unsigned long long>(n_pos) * (n_pos + 1);
  return static_cast<double>(doubled_u) /
         (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  // Deviations from the first value keep a constant sample at exactly zero spread.
  const double shift = values[0];
  double sum = 0.0;
  for (double v : values) sum += v - shift;
  const double centre = sum / static_cast<double>(values.size());
  out.mean = shift + centre;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - shift - centre) * (v - shift - centre);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace graphdr

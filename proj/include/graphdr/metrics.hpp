#pragma once

#include <span>

namespace graphdr {

// Area under the ROC curve via the Mann-Whitney rank statistic: the
// probability that a random positive outscores a random negative, with ties
// credited 0.5. Labels are 0/1. Throws SingleClass when a class is missing
// and LengthMismatch on unequal lengths.
double auroc(std::span<const double> scores, std::span<const int> labels);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation; 0 for n == 1
};

MeanStd mean_std(std::span<const double> values);

}  // namespace graphdr

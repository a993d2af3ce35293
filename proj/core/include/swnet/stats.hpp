#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace swnet {

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t count = 0;
};

// Sample mean and (n-1) standard deviation.
inline Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace swnet

#pragma once

#include <utility>
#include <vector>

#include "taf/tape.hpp"

namespace taf {

// Central-finite-difference check of reverse-mode gradients, run in 64-bit.
// f is called with a fresh tape and one Val per input tensor and must return
// a scalar. Returns the max relative error over every element of every
// input, with denominator max(|g_fd|, |g_ad|, 1e-8).
template <typename F>
double grad_check(F&& f, std::vector<Tensor<double>> inputs, double eps = 1e-5) {
  Tape<double> tape;
  std::vector<Val<double>> leaves;
  leaves.reserve(inputs.size());
  for (const auto& x : inputs) leaves.push_back(tape.leaf(x, true));
  Val<double> out = f(tape, leaves);
  tape.backward(out);
  std::vector<Tensor<double>> ad;
  ad.reserve(leaves.size());
  for (const auto& l : leaves) ad.push_back(tape.grad(l));

  auto eval = [&](const std::vector<Tensor<double>>& xs) {
    Tape<double> t;
    std::vector<Val<double>> ls;
    ls.reserve(xs.size());
    for (const auto& x : xs) ls.push_back(t.leaf(x, false));
    return f(t, ls).t.item();
  };

  double max_rel = 0.0;
  for (size_t i = 0; i < inputs.size(); ++i) {
    for (int64_t j = 0; j < inputs[i].numel(); ++j) {
      std::vector<Tensor<double>> xs;
      xs.reserve(inputs.size());
      for (const auto& x : inputs) xs.push_back(x.clone());
      xs[i][j] += eps;
      double fp = eval(xs);
      xs[i][j] -= 2 * eps;
      double fm = eval(xs);
      double fd = (fp - fm) / (2 * eps);
      double g = ad[i][j];
      double denom = std::max({std::abs(fd), std::abs(g), 1e-8});
      max_rel = std::max(max_rel, std::abs(fd - g) / denom);
    }
  }
  return max_rel;
}

}  // namespace taf

#pragma once

// Test-only reference computations. Nothing here calls into the library code
// paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mutascan/align.hpp"
#include "mutascan/neuralnet.hpp"
#include "mutascan/random.hpp"

namespace oracle {

inline std::string random_dna(mutascan::Rng& rng, std::size_t length) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s.push_back(kBases[rng.below(4)]);
  return s;
}

// Affine score of two gapped rows, written independently of score_rows.
inline long affine_score(const std::string& ra, const std::string& rb, const mutascan::ScoringScheme& sc) {
  long total = 0;
  std::size_t c = 0;
  while (c < ra.size()) {
    if (ra[c] != '-' && rb[c] != '-') {
      total += ra[c] == rb[c] ? sc.match : sc.mismatch;
      ++c;
      continue;
    }
    const bool gap_in_a = ra[c] == '-';
    std::size_t run = 0;
    while (c < ra.size() && (gap_in_a ? ra[c] == '-' : rb[c] == '-')) {
      ++run;
      ++c;
    }
    total += sc.gap_open + static_cast<long>(run - 1) * sc.gap_extend;
  }
  return total;
}

struct Enumerated {
  long best = 0;
  std::vector<std::pair<std::string, std::string>> optimal_rows;
  std::size_t alignments = 0;
};

// Every global alignment of a and b (no gap/gap columns), scored exhaustively.
inline Enumerated enumerate_alignments(const std::string& a, const std::string& b,
                                       const mutascan::ScoringScheme& sc) {
  Enumerated out;
  bool first = true;
  std::string ra, rb;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j) {
    if (i == a.size() && j == b.size()) {
      ++out.alignments;
      const long s = affine_score(ra, rb, sc);
      if (first || s > out.best) {
        out.best = s;
        out.optimal_rows.clear();
        first = false;
      }
      if (s == out.best) out.optimal_rows.emplace_back(ra, rb);
      return;
    }
    if (i < a.size() && j < b.size()) {
      ra.push_back(a[i]);
      rb.push_back(b[j]);
      walk(i + 1, j + 1);
      ra.pop_back();
      rb.pop_back();
    }
    if (i < a.size()) {
      ra.push_back(a[i]);
      rb.push_back('-');
      walk(i + 1, j);
      ra.pop_back();
      rb.pop_back();
    }
    if (j < b.size()) {
      ra.push_back('-');
      rb.push_back(b[j]);
      walk(i, j + 1);
      ra.pop_back();
      rb.pop_back();
    }
  };
  walk(0, 0);
  return out;
}

// Maximal exact matches by comparing every substring pair directly.
inline std::vector<mutascan::SeedHit> brute_force_seeds(const std::string& q, const std::string& s, std::size_t k) {
  std::vector<mutascan::SeedHit> hits;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (std::size_t len = k; i + len <= q.size() && j + len <= s.size(); ++len) {
        if (q.compare(i, len, s, j, len) != 0) continue;
        const bool left_max = i == 0 || j == 0 || q[i - 1] != s[j - 1];
        const bool right_max = i + len == q.size() || j + len == s.size() || q[i + len] != s[j + len];
        if (left_max && right_max) {
          hits.push_back({i, j, len, static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i)});
        }
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
    return std::tie(x.diagonal, x.query_pos) < std::tie(y.diagonal, y.query_pos);
  });
  return hits;
}

// Plain forward evaluation in long double: y = f(b + sum x w) layer by layer.
inline std::vector<long double> evaluate(const mutascan::Network& net, const std::vector<long double>& params,
                                         const std::vector<double>& x) {
  std::vector<long double> act(x.begin(), x.end());
  std::size_t p = 0;
  for (std::size_t l = 0; l + 1 < net.layer_sizes.size(); ++l) {
    const std::size_t n_in = net.layer_sizes[l], n_out = net.layer_sizes[l + 1];
    const std::size_t w0 = p, b0 = p + n_in * n_out;
    std::vector<long double> next(n_out);
    for (std::size_t j = 0; j < n_out; ++j) {
      long double sum = params[b0 + j];
      for (std::size_t i = 0; i < n_in; ++i) sum += act[i] * params[w0 + i * n_out + j];
      next[j] = 1.0L / (1.0L + std::exp(-sum));
    }
    act = std::move(next);
    p = b0 + n_out;
  }
  return act;
}

// Parameters flattened in model-file order: per layer weights row-major, then biases.
inline std::vector<long double> flatten(const mutascan::Network& net) {
  std::vector<long double> out;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    for (double v : net.weights[l].data()) out.push_back(v);
    for (double v : net.biases[l]) out.push_back(v);
  }
  return out;
}

inline std::vector<double> flatten(const mutascan::ParameterUpdate& u) {
  std::vector<double> out;
  for (std::size_t l = 0; l < u.weights.size(); ++l) {
    for (double v : u.weights[l].data()) out.push_back(v);
    for (double v : u.biases[l]) out.push_back(v);
  }
  return out;
}

inline long double half_squared_error(const mutascan::Network& net, const std::vector<long double>& params,
                                      const std::vector<double>& x, const std::vector<double>& t) {
  const auto y = evaluate(net, params, x);
  long double e = 0;
  for (std::size_t k = 0; k < y.size(); ++k) e += 0.5L * (t[k] - y[k]) * (t[k] - y[k]);
  return e;
}

// Central finite-difference gradient of 0.5 * sum (t - y)^2.
inline std::vector<double> fd_gradient(const mutascan::Network& net, const std::vector<double>& x,
                                       const std::vector<double>& t, long double step = 1e-5L) {
  auto params = flatten(net);
  std::vector<double> grad(params.size());
  for (std::size_t p = 0; p < params.size(); ++p) {
    const long double saved = params[p];
    params[p] = saved + step;
    const long double up = half_squared_error(net, params, x, t);
    params[p] = saved - step;
    const long double down = half_squared_error(net, params, x, t);
    params[p] = saved;
    grad[p] = static_cast<double>((up - down) / (2 * step));
  }
  return grad;
}

}  // namespace oracle

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "qcos/errors.hpp"
#include "qcos/random.hpp"

namespace qcos {

/// Shots are drawn in fixed-size chunks, chunk c using stream derive_seed(seed, c).
/// Workers take whole chunks, so tallies do not depend on the worker count.
inline constexpr std::uint64_t kShotChunk = std::uint64_t{1} << 16;

namespace detail {

inline void sample_chunk(std::span<const double> cumulative, std::size_t last_nonzero,
                         std::uint64_t shots, std::uint64_t seed, std::vector<std::uint64_t>& out) {
  Rng rng(seed);
  const double total = cumulative.back();
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cumulative.begin());
    if (k > last_nonzero) k = last_nonzero;
    ++out[k];
  }
}

}  // namespace detail

/// Draws `shots` independent outcomes from the categorical distribution `probs`
/// (non-negative, positive total) and returns per-outcome tallies.
/// Zero-probability outcomes are never drawn.
inline std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots,
                                                std::uint64_t seed, unsigned workers = 1) {
  if (probs.empty()) throw InternalError("empty distribution");
  std::vector<double> cumulative(probs.size());
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] < 0.0) throw InternalError("negative probability");
    if (probs[k] > 0.0) last_nonzero = k;
    acc += probs[k];
    cumulative[k] = acc;
  }
  if (!(acc > 0.0)) throw InternalError("distribution has zero mass");

  const std::uint64_t chunks = (shots + kShotChunk - 1) / kShotChunk;
  const unsigned w = static_cast<unsigned>(
      std::clamp<std::uint64_t>(workers == 0 ? 1 : workers, 1, std::max<std::uint64_t>(chunks, 1)));
  std::vector<std::vector<std::uint64_t>> partial(w, std::vector<std::uint64_t>(probs.size(), 0));

  auto run = [&](unsigned worker) {
    for (std::uint64_t c = worker; c < chunks; c += w) {
      const std::uint64_t n = std::min(kShotChunk, shots - c * kShotChunk);
      detail::sample_chunk(cumulative, last_nonzero, n, derive_seed(seed, c), partial[worker]);
    }
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) pool.emplace_back(run, t);
  }

  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += part[k];
  }
  return counts;
}

/// Number of 1 outcomes in `shots` Bernoulli(p1) trials.
inline std::uint64_t count_ones(double p1, std::uint64_t shots, std::uint64_t seed,
                                unsigned workers = 1) {
  const double p = std::clamp(p1, 0.0, 1.0);
  const double probs[2] = {1.0 - p, p};
  return sample_counts(probs, shots, seed, workers)[1];
}

}  // namespace qcos

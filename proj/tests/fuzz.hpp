#pragma once
// Seeded random channel generators for property tests.  All draws go through
// a caller-owned mt19937_64 so every test is reproducible from its seed.
#include <random>
#include <vector>

#include "macwt/channel.hpp"

namespace fuzz {

// Random pmf bounded away from zero so information quantities stay generic.
inline std::vector<double> random_pmf(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> draw(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& v : p) {
    v = draw(rng) + 0.05;
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

inline int pick_size(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

// Arbitrary p(y,z|x): no structural relation between the two outputs.
inline macwt::ChannelSpec random_channel(std::mt19937_64& rng, int K,
                                         int max_alpha = 3) {
  macwt::ChannelSpec s;
  s.y_alphabet = pick_size(rng, 2, max_alpha);
  s.z_alphabet = pick_size(rng, 2, max_alpha);
  std::size_t combos = 1;
  for (int k = 0; k < K; ++k) {
    int a = pick_size(rng, 2, max_alpha);
    s.user_alphabets.push_back(a);
    s.input_pmfs.push_back(random_pmf(rng, a));
    combos *= static_cast<std::size_t>(a);
  }
  s.transition.reserve(combos * s.y_alphabet * s.z_alphabet);
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<double> row = random_pmf(rng, s.y_alphabet * s.z_alphabet);
    s.transition.insert(s.transition.end(), row.begin(), row.end());
  }
  return s;
}

// Physically degraded eavesdropper: p(y,z|x) = p(y|x) q(z|y).  The receiver
// bound then dominates the eavesdropper bound for every subset and partition.
inline macwt::ChannelSpec degraded_channel(std::mt19937_64& rng, int K,
                                           int max_alpha = 3) {
  macwt::ChannelSpec s;
  s.y_alphabet = pick_size(rng, 2, max_alpha);
  s.z_alphabet = pick_size(rng, 2, max_alpha);
  std::size_t combos = 1;
  for (int k = 0; k < K; ++k) {
    int a = pick_size(rng, 2, max_alpha);
    s.user_alphabets.push_back(a);
    s.input_pmfs.push_back(random_pmf(rng, a));
    combos *= static_cast<std::size_t>(a);
  }
  std::vector<std::vector<double>> q;
  for (int y = 0; y < s.y_alphabet; ++y) q.push_back(random_pmf(rng, s.z_alphabet));
  s.transition.assign(combos * s.y_alphabet * s.z_alphabet, 0.0);
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<double> py = random_pmf(rng, s.y_alphabet);
    for (int y = 0; y < s.y_alphabet; ++y) {
      for (int z = 0; z < s.z_alphabet; ++z) {
        s.transition[(c * s.y_alphabet + y) * s.z_alphabet + z] = py[y] * q[y][z];
      }
    }
  }
  return s;
}

// Deterministic map y = f(x1..xK) with a binary symmetric noise on top,
// composed per-user; handy for hand-checkable fixtures.
inline std::vector<double> bsc_row(int target, int size, double flip) {
  std::vector<double> row(size, flip / (size - 1));
  row[target] = 1.0 - flip;
  return row;
}

}  // namespace fuzz

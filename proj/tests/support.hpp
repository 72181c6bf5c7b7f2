#pragma once

#include <string>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "oracles.hpp"

namespace pfab::test {

// Pearson statistic of observed counts against expected probabilities, and
// whether it stays below the upper `alpha` quantile.
inline bool chi_square_accepts(const std::vector<double>& probabilities, const std::vector<std::size_t>& counts,
                               double alpha) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * probabilities[i];
    stat += (static_cast<double>(counts[i]) - e) * (static_cast<double>(counts[i]) - e) / e;
  }
  const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return stat <= boost::math::quantile(boost::math::complement(dist, alpha));
}

// Most rejections a family of `tests` exact level-`alpha` tests shows with
// probability at least 0.999.
inline std::size_t allowed_rejections(std::size_t tests, double alpha) {
  const boost::math::binomial dist(static_cast<double>(tests), alpha);
  return static_cast<std::size_t>(boost::math::quantile(dist, 0.999));
}

// Random normalized weights over `n` entries, some zero.
inline std::vector<double> random_weights(std::size_t n, RandomStream& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.bernoulli(0.3) ? 0.0 : rng.uniform() + 0.05;
    total += x;
  }
  if (total == 0.0) {
    w[rng.index(n)] = 1.0;
    return w;
  }
  for (auto& x : w) x /= total;
  return w;
}

// Random PFA over outputs 1..arms with every supported transition defined.
inline Pfa random_pfa(std::size_t states, int arms, RandomStream& rng) {
  std::vector<Arm> outputs;
  for (Arm k = 1; k <= arms; ++k) outputs.push_back(k);
  PfaBuilder b(outputs);
  for (std::size_t i = 0; i < states; ++i) b.add_state("s" + std::to_string(i));
  b.set_start(0);
  for (StateId q = 0; q < states; ++q) {
    const auto aw = random_weights(static_cast<std::size_t>(arms), rng);
    std::vector<Weighted<Arm>> action;
    for (Arm k = 1; k <= arms; ++k) {
      if (aw[static_cast<std::size_t>(k - 1)] > 0.0) action.push_back({k, aw[static_cast<std::size_t>(k - 1)]});
    }
    b.set_action(q, action);
    for (Arm k = 1; k <= arms; ++k) {
      for (int h : {0, 1}) {
        const auto sw = random_weights(states, rng);
        std::vector<Weighted<StateId>> succ;
        for (StateId s = 0; s < states; ++s) {
          if (sw[s] > 0.0) succ.push_back({s, sw[s]});
        }
        b.set_transition(q, {k, h}, succ);
      }
    }
  }
  return std::move(b).build();
}

// Arms 1..K as an output alphabet.
inline std::vector<Arm> arms_upto(int k) {
  std::vector<Arm> out;
  for (Arm a = 1; a <= k; ++a) out.push_back(a);
  return out;
}

}  // namespace pfab::test

#pragma once

#include <random>
#include <vector>

#include "nchv/chart.hpp"
#include "nchv/contact.hpp"

namespace testing_support {

// Deterministic admissible sample points of a chart.
inline std::vector<nchv::Point> sample_points(const nchv::ChartManifold& m, int count, unsigned seed = 1) {
  std::mt19937_64 rng(seed);
  const nchv::Box box = m.sampling_box();
  std::vector<nchv::Point> out;
  while (static_cast<int>(out.size()) < count) {
    nchv::Point x(static_cast<std::size_t>(m.dim()));
    for (int i = 0; i < m.dim(); ++i) x[i] = std::uniform_real_distribution<double>(box.lo[i], box.hi[i])(rng);
    if (m.admits_sample(x)) out.push_back(x);
  }
  return out;
}

inline nchv::Vec random_vec(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  nchv::Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

inline nchv::Vec random_unit(const nchv::LocalStructure& ls, std::mt19937_64& rng, bool horizontal = false) {
  nchv::Vec v = random_vec(ls.dim(), rng);
  if (horizontal) v = ls.project(v);
  return v / ls.norm(v);
}

}  // namespace testing_support

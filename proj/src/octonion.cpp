#include "nchv/octonion.hpp"

namespace nchv {

const std::array<OctonionTable::Triple, 7>& OctonionTable::triples() {
  static const std::array<Triple, 7> t = {{{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 6, 5}}};
  return t;
}

const OctonionTable& OctonionTable::standard() {
  static const OctonionTable table;
  return table;
}

OctonionTable::OctonionTable() {
  for (const auto& t : triples()) {
    const int a = t[0] - 1, b = t[1] - 1, k = t[2] - 1;
    const std::array<std::array<int, 3>, 3> cyc = {{{a, b, k}, {b, k, a}, {k, a, b}}};
    for (const auto& [i, j, l] : cyc) {
      c_[i][j][l] = 1;
      c_[j][i][l] = -1;
      entries_.push_back({i, j, l});
    }
  }
}

std::array<double, 8> OctonionTable::multiply(const std::array<double, 8>& a, const std::array<double, 8>& b) const {
  std::array<double, 8> out{};
  out[0] = a[0] * b[0];
  for (int i = 1; i < 8; ++i) {
    out[i] += a[0] * b[i] + a[i] * b[0];
    out[0] -= a[i] * b[i];
  }
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      for (int k = 0; k < 7; ++k)
        if (c_[i][j][k] != 0) out[k + 1] += c_[i][j][k] * a[i + 1] * b[j + 1];
    }
  return out;
}

}  // namespace nchv

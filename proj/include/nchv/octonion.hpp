#pragma once

// Imaginary octonions Im(O) = R^7 and their cross product.

#include <array>
#include <utility>
#include <vector>

namespace nchv {

class OctonionTable {
 public:
  using Triple = std::array<int, 3>;

  /// Oriented Fano lines, 1-based: e_i e_j = e_k for each (i,j,k) and its
  /// cyclic shifts.
  static const std::array<Triple, 7>& triples();

  static const OctonionTable& standard();

  /// c_ijk (0-based) with e_i e_j = Σ_k c_ijk e_k - δ_ij.
  int c(int i, int j, int k) const { return c_[i][j][k]; }

  /// u × v = ½(uv - vu) for imaginary u, v.
  template <typename S>
  std::array<S, 7> cross(const std::array<S, 7>& u, const std::array<S, 7>& v) const {
    std::array<S, 7> out{};
    for (int k = 0; k < 7; ++k) out[k] = S(0.0);
    for (const auto& [i, j, k] : entries_) {
      out[k] += u[i] * v[j];
      out[k] -= u[j] * v[i];
    }
    return out;
  }

  /// Full octonion product, index 0 the real part and 1..7 the e_i.
  std::array<double, 8> multiply(const std::array<double, 8>& a, const std::array<double, 8>& b) const;

 private:
  OctonionTable();

  int c_[7][7][7] = {};
  // (i,j,k) with c_ijk = +1, one per cyclic shift of each line.
  std::vector<std::array<int, 3>> entries_;
};

}  // namespace nchv

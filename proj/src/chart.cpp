#include "nchv/chart.hpp"

#include <cmath>
#include <sstream>

namespace nchv {

bool Box::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
  return true;
}

Box Box::shrunk(double fraction) const {
  Box b = *this;
  for (int i = 0; i < dim(); ++i) {
    const double w = hi[i] - lo[i];
    b.lo[i] += fraction * w;
    b.hi[i] -= fraction * w;
  }
  return b;
}

ChartManifold::ChartManifold(std::string name, Box domain, TensorField metric, RegionTest region)
    : name_(std::move(name)), domain_(std::move(domain)), metric_(std::move(metric)), region_(std::move(region)) {
  if (domain_.dim() < 1 || domain_.dim() > kMaxChartDim || domain_.hi.size() != domain_.lo.size())
    throw DomainError("chart dimension out of range");
  if (metric_.up() != 0 || metric_.down() != 2) throw DomainError("metric must be a (0,2) field");
}

bool ChartManifold::contains(std::span<const double> x) const {
  if (!domain_.contains(x)) return false;
  return !region_ || region_(x, 0.0);
}

bool ChartManifold::admits_sample(std::span<const double> x) const {
  if (!sampling_box().contains(x)) return false;
  return !region_ || region_(x, kSamplingMargin);
}

void ChartManifold::require_point(std::span<const double> x) const {
  if (contains(x)) return;
  std::ostringstream os;
  os << "point (";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ") is outside the domain of chart '" << name_ << "'";
  throw DomainError(os.str());
}

}  // namespace nchv

#pragma once

// Catalog of pointwise identities I1..I27 for almost contact structures.
// Each entry evaluates one or more named parts at a sampled point; the
// identity residual is the largest part residual.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nchv/harmonicity.hpp"

namespace nchv {

enum class Slot { Tangent, Horizontal };

/// Everything the evaluators read at one point, built once and shared.
struct PointGeometry {
  PointGeometry(const AlmostContactStructure& acs, std::span<const double> x);

  LocalStructure local;
  FramePoint frame;
  ProjectedConnection connection;
};

struct PartResidual {
  std::string name;
  double residual = 0.0;
};

using PartResiduals = std::vector<PartResidual>;
using IdentityEvaluator = std::function<PartResiduals(const PointGeometry&, std::span<const Vec>)>;

struct IdentityDescriptor {
  std::string id;
  std::string anchor;
  std::vector<Slot> slots;
  bool cosymplectic_only = false;
  bool gate = false;
  IdentityEvaluator evaluate;

  int arity() const { return static_cast<int>(slots.size()); }
};

const std::vector<IdentityDescriptor>& identity_catalog();

/// Throws DomainError for an unknown id.
const IdentityDescriptor& find_identity(std::string_view id);

/// Checks arity and horizontality, then evaluates every part.
PartResiduals evaluate_parts(const IdentityDescriptor& d, const PointGeometry& pg, std::span<const Vec> vectors);

/// Largest part residual.
double evaluate_identity(const IdentityDescriptor& d, const PointGeometry& pg, std::span<const Vec> vectors);

}  // namespace nchv

#pragma once

// Concrete structures used by the verifier.

#include <string>
#include <string_view>
#include <vector>

#include "nchv/chart.hpp"
#include "nchv/contact.hpp"

namespace nchv {

enum class Classification { Cosymplectic, NearlyCosymplecticStrict, NegativeControl };

std::string_view to_string(Classification c);

struct ModelSpec {
  std::string name;
  Classification classification;
  std::string description;
  AlmostContactStructure structure;
};

/// R^5 with the identity metric, θ rotating (e1,e2) and (e3,e4), ξ = e5.
AlmostContactStructure make_flat_cosymplectic_r5();

/// Round S^2 (polar angle, azimuth) times a line, Kähler rotation on the
/// sphere, ξ = ∂_t.
AlmostContactStructure make_kahler_product_s2xr();

/// Unit S^5 = S^6 ∩ {x7 = 0} in Im(O), upper hemisphere chart over the
/// ball |u| < 0.9. ξ = -p × e7, θX = tangential part of p × X.
AlmostContactStructure make_s5_nearly_cosymplectic();

/// Heisenberg group in Darboux coordinates: η = ½(dz - y dx), ξ = 2∂_z,
/// g = η⊗η + ¼(dx² + dy²).
AlmostContactStructure make_sasakian_control();

/// Round unit S^2 in (polar angle, azimuth), poles excluded.
ChartManifold make_round_s2();

const std::vector<ModelSpec>& model_registry();

/// Throws DomainError for unknown names.
const ModelSpec& find_model(std::string_view name);

}  // namespace nchv

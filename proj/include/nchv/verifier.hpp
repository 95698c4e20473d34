#pragma once

// Seeded sampling, suite execution and reporting.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nchv/identities.hpp"
#include "nchv/models.hpp"

namespace nchv {

/// Invalid suite configuration; the command line maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class Status { Pass, Fail, ExpectedFail, Skipped };

std::string_view to_string(Status s);

struct SuiteConfig {
  std::string model;
  std::vector<std::string> identities;  // empty means all
  int samples = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-7;
  double control_threshold = 1e-2;
  std::string format = "json";
  unsigned threads = 1;  // 0 = hardware concurrency; not part of the report

  void validate() const;
};

/// Parses "all" or a comma-separated id list. Throws ConfigError.
std::vector<std::string> parse_suite(std::string_view text);

/// k-th sample point of a chart for a seed. `attempt` > 0 gives the
/// replacement point used after a degenerate sample.
Point sample_point(const ChartManifold& m, std::uint64_t seed, int k, int attempt = 0);

/// Unit vectors for the slots of an identity at sample k. Horizontal slots
/// are projected by P before normalizing. Throws NumericalError on a
/// near-zero draw.
std::vector<Vec> sample_vectors(const LocalStructure& ls, std::span<const Slot> slots, std::uint64_t seed,
                                std::string_view identity, int k, int attempt = 0);

struct SampleInput {
  Point x;
  FramePoint frame;
  std::vector<Vec> vectors;
};

/// The sample stream one identity sees under a configuration.
std::vector<SampleInput> sample_inputs(const SuiteConfig& config, const IdentityDescriptor& d);

struct IdentityReport {
  std::string id;
  std::string anchor;
  int samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  Status status = Status::Skipped;
  std::string reason;
  std::map<std::string, double> parts;  // largest residual per part
  std::vector<std::string> notes;       // resamples and skipped samples
};

struct RunReport {
  SuiteConfig config;
  std::string classification;
  std::vector<IdentityReport> identities;
  std::vector<std::string> notes;
  bool pass = false;
  double wall_time_ms = 0.0;
};

/// Throws ConfigError for a bad configuration and DomainError for an
/// unknown model.
RunReport run_suite(const SuiteConfig& config);

/// Runs against `model` directly; config.model is only echoed.
RunReport run_suite(const SuiteConfig& config, const ModelSpec& model);

nlohmann::ordered_json to_json(const RunReport& r);
std::string to_text(const RunReport& r);

/// Chart data at a point for inspection. Throws DomainError outside the
/// chart domain.
nlohmann::ordered_json dump_tensors(const ModelSpec& model, std::span<const double> x);
std::string dump_text(const nlohmann::ordered_json& dump);

}  // namespace nchv

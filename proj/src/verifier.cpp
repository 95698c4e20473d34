#include "nchv/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace nchv {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::ExpectedFail:
      return "EXPECTED-FAIL";
    case Status::Skipped:
      return "SKIPPED";
  }
  return "?";
}

void SuiteConfig::validate() const {
  if (samples < 1) throw ConfigError("samples must be at least 1, got " + std::to_string(samples));
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(tolerance < control_threshold))
    throw ConfigError("tolerance must be below the control threshold (" + std::to_string(control_threshold) + ")");
  if (format != "json" && format != "text") throw ConfigError("format must be json or text, got '" + format + "'");
  for (const auto& id : identities) {
    try {
      find_identity(id);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
}

std::vector<std::string> parse_suite(std::string_view text) {
  if (text == "all") return {};
  std::vector<std::string> ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string id(text.substr(start, end - start));
    id.erase(std::remove_if(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c); }), id.end());
    if (id.empty()) throw ConfigError("empty identity in suite list '" + std::string(text) + "'");
    if (!id.empty() && id[0] == 'i') id[0] = 'I';
    try {
      find_identity(id);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    start = end + 1;
  }
  return ids;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, int k, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),       static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag),        static_cast<std::uint32_t>(tag >> 32),
                    static_cast<std::uint32_t>(k),          static_cast<std::uint32_t>(attempt)};
  return std::mt19937_64(seq);
}

template <typename F>
void parallel_for(int n, unsigned threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (int k = 0; k < n; ++k) f(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  {
    std::vector<std::jthread> pool;
    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(n));
    for (unsigned t = 0; t < count; ++t)
      pool.emplace_back([&] {
        for (int k = next++; k < n; k = next++) {
          try {
            f(k);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

struct Cell {
  bool ok = false;
  PartResiduals parts;
  std::string note;

  double residual() const {
    double r = 0.0;
    for (const auto& p : parts) r = std::max(r, p.residual);
    return r;
  }
};

Cell evaluate_cell(const IdentityDescriptor& d, const PointGeometry& pg, const SuiteConfig& cfg, int k) {
  Cell c;
  std::string first;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      const auto v = sample_vectors(pg.local, d.slots, cfg.seed, d.id, k, attempt);
      c.parts = evaluate_parts(d, pg, v);
      c.ok = true;
      if (attempt == 1) c.note = "sample " + std::to_string(k) + ": vectors resampled after: " + first;
      return c;
    } catch (const Error& e) {
      if (attempt == 0) first = e.what();
      else c.note = "sample " + std::to_string(k) + ": skipped after resample: " + first + "; then: " + e.what();
    }
  }
  return c;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

Point sample_point(const ChartManifold& m, std::uint64_t seed, int k, int attempt) {
  auto rng = stream(seed, fnv1a("point"), k, attempt);
  const Box box = m.sampling_box();
  Point x(static_cast<std::size_t>(m.dim()));
  for (int tries = 0; tries < 10000; ++tries) {
    for (int i = 0; i < m.dim(); ++i) x[i] = std::uniform_real_distribution<double>(box.lo[i], box.hi[i])(rng);
    if (m.admits_sample(x)) return x;
  }
  throw DomainError("no admissible sample point found in chart '" + m.name() + "'");
}

std::vector<Vec> sample_vectors(const LocalStructure& ls, std::span<const Slot> slots, std::uint64_t seed,
                                std::string_view identity, int k, int attempt) {
  auto rng = stream(seed, fnv1a(identity), k, attempt);
  std::normal_distribution<double> nd;
  std::vector<Vec> out;
  for (Slot s : slots) {
    Vec v(ls.dim());
    for (int i = 0; i < ls.dim(); ++i) v[i] = nd(rng);
    if (s == Slot::Horizontal) v = ls.project(v);
    const double n = ls.norm(v);
    if (!(n > 1e-8)) throw NumericalError("near-zero sample vector (norm " + format_double(n) + ")");
    v /= n;
    if (s == Slot::Horizontal) v = ls.project(v);
    out.push_back(v);
  }
  return out;
}

std::vector<SampleInput> sample_inputs(const SuiteConfig& config, const IdentityDescriptor& d) {
  config.validate();
  const auto& m = find_model(config.model);
  std::vector<SampleInput> out;
  for (int k = 0; k < config.samples; ++k) {
    const Point x = sample_point(m.structure.manifold(), config.seed, k);
    const LocalStructure ls(m.structure, x);
    out.push_back({x, orthonormal_frame(ls), sample_vectors(ls, d.slots, config.seed, d.id, k)});
  }
  return out;
}

RunReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  return run_suite(cfg, find_model(cfg.model));
}

RunReport run_suite(const SuiteConfig& cfg, const ModelSpec& model) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  const auto& acs = model.structure;
  const bool control = model.classification == Classification::NegativeControl;
  const int n = cfg.samples;
  const unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;

  std::vector<const IdentityDescriptor*> selected;
  for (const auto& d : identity_catalog()) {
    const bool wanted = cfg.identities.empty() ||
                        std::find(cfg.identities.begin(), cfg.identities.end(), d.id) != cfg.identities.end();
    if (wanted || d.gate) selected.push_back(&d);
  }

  RunReport report;
  report.config = cfg;
  report.classification = std::string(to_string(model.classification));

  // Geometry per sample point, shared read-only by every identity.
  std::vector<std::optional<PointGeometry>> geometry(static_cast<std::size_t>(n));
  std::vector<std::string> point_notes(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](int k) {
    std::string first;
    for (int attempt = 0; attempt < 2; ++attempt) {
      try {
        const Point x = sample_point(acs.manifold(), cfg.seed, k, attempt);
        geometry[k].emplace(acs, x);
        if (attempt == 1) point_notes[k] = "sample " + std::to_string(k) + ": point resampled after: " + first;
        return;
      } catch (const Error& e) {
        if (attempt == 0) first = e.what();
        else
          point_notes[k] = "sample " + std::to_string(k) + ": skipped after resample: " + first + "; then: " + e.what();
      }
    }
  });
  for (const auto& note : point_notes)
    if (!note.empty()) report.notes.push_back(note);

  const std::size_t m = selected.size();
  std::vector<std::vector<Cell>> cells(m, std::vector<Cell>(static_cast<std::size_t>(n)));
  auto run_cells = [&](const std::vector<std::size_t>& which) {
    parallel_for(static_cast<int>(which.size()) * n, threads, [&](int task) {
      const std::size_t i = which[static_cast<std::size_t>(task / n)];
      const int k = task % n;
      if (!geometry[k]) return;
      cells[i][k] = evaluate_cell(*selected[i], *geometry[k], cfg, k);
    });
  };

  std::vector<IdentityReport> reports(m);
  auto aggregate = [&](std::size_t i) {
    const auto& d = *selected[i];
    IdentityReport& r = reports[i];
    r.id = d.id;
    r.anchor = d.anchor;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const Cell& c = cells[i][k];
      if (!c.note.empty()) r.notes.push_back(c.note);
      if (!c.ok) continue;
      const double v = c.residual();
      ++r.samples;
      sum += v;
      r.max_residual = std::max(r.max_residual, v);
      for (const auto& p : c.parts) {
        auto [it, fresh] = r.parts.try_emplace(p.name, p.residual);
        if (!fresh) it->second = std::max(it->second, p.residual);
      }
    }
    if (r.samples == 0) {
      r.status = Status::Skipped;
      r.reason = "no valid samples";
      return;
    }
    r.mean_residual = sum / r.samples;
    if (!control) {
      r.status = r.max_residual <= cfg.tolerance ? Status::Pass : Status::Fail;
    } else if (d.id == "I1") {
      r.status = r.max_residual <= cfg.tolerance ? Status::Pass : Status::Fail;
    } else if (d.id == "I2") {
      r.status = r.max_residual >= cfg.control_threshold ? Status::ExpectedFail : Status::Fail;
    } else {
      r.status = r.max_residual <= cfg.tolerance ? Status::Pass : Status::ExpectedFail;
    }
  };

  std::vector<std::size_t> gates, rest;
  for (std::size_t i = 0; i < m; ++i) (selected[i]->gate ? gates : rest).push_back(i);
  run_cells(gates);
  std::string gate_failure;
  for (std::size_t i : gates) {
    aggregate(i);
    if (!control && reports[i].status != Status::Pass && gate_failure.empty())
      gate_failure = "gate " + reports[i].id + " did not pass";
  }

  std::vector<std::size_t> runnable;
  for (std::size_t i : rest) {
    IdentityReport& r = reports[i];
    r.id = selected[i]->id;
    r.anchor = selected[i]->anchor;
    if (!gate_failure.empty()) {
      r.reason = gate_failure;
    } else if (selected[i]->cosymplectic_only && model.classification != Classification::Cosymplectic) {
      r.reason = "holds only when η is closed; model is " + report.classification;
    } else {
      runnable.push_back(i);
    }
  }
  run_cells(runnable);
  for (std::size_t i : runnable) aggregate(i);

  report.identities = std::move(reports);
  report.pass = std::none_of(report.identities.begin(), report.identities.end(),
                             [](const IdentityReport& r) { return r.status == Status::Fail; });
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  using nlohmann::ordered_json;
  ordered_json config;
  config["model"] = r.config.model;
  if (r.config.identities.empty()) config["suite"] = "all";
  else config["suite"] = r.config.identities;
  config["samples"] = r.config.samples;
  config["seed"] = r.config.seed;
  config["tolerance"] = r.config.tolerance;
  config["control_threshold"] = r.config.control_threshold;
  config["format"] = r.config.format;

  ordered_json ids = ordered_json::array();
  for (const auto& i : r.identities) {
    ordered_json j;
    j["id"] = i.id;
    j["anchor"] = i.anchor;
    j["samples"] = i.samples;
    j["max_residual"] = i.max_residual;
    j["mean_residual"] = i.mean_residual;
    j["status"] = std::string(to_string(i.status));
    j["reason"] = i.reason;
    ordered_json parts = ordered_json::object();
    for (const auto& [name, v] : i.parts) parts[name] = v;
    j["parts"] = parts;
    j["notes"] = i.notes;
    ids.push_back(std::move(j));
  }

  ordered_json out;
  out["config"] = config;
  out["classification"] = r.classification;
  out["identities"] = ids;
  out["notes"] = r.notes;
  out["verdict"] = r.pass ? "PASS" : "FAIL";
  out["wall_time_ms"] = r.wall_time_ms;
  return out;
}

std::string to_text(const RunReport& r) {
  std::ostringstream os;
  os << "model " << r.config.model << " (" << r.classification << ")  samples " << r.config.samples << "  seed "
     << r.config.seed << "  tol " << format_double(r.config.tolerance) << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-5s %-14s %7s %11s %11s\n", "id", "status", "samples", "max", "mean");
  os << line;
  for (const auto& i : r.identities) {
    std::snprintf(line, sizeof line, "%-5s %-14s %7d %11s %11s", i.id.c_str(), std::string(to_string(i.status)).c_str(),
                  i.samples, format_double(i.max_residual).c_str(), format_double(i.mean_residual).c_str());
    os << line;
    if (!i.reason.empty()) os << "  " << i.reason;
    os << "\n";
    for (const auto& note : i.notes) os << "      " << note << "\n";
  }
  for (const auto& note : r.notes) os << "note: " << note << "\n";
  os << "\nverdict " << (r.pass ? "PASS" : "FAIL") << "  (" << static_cast<long long>(std::llround(r.wall_time_ms))
     << " ms)\n";
  return os.str();
}

namespace {

nlohmann::ordered_json rows(const Mat& a) {
  auto out = nlohmann::ordered_json::array();
  for (int i = 0; i < a.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    out.push_back(row);
  }
  return out;
}

nlohmann::ordered_json vec(const Vec& v) {
  auto out = nlohmann::ordered_json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// Rank-3 array T[a][b][c] from a flat row-major tensor.
nlohmann::ordered_json cube(const Tensor<double>& t, int n) {
  auto out = nlohmann::ordered_json::array();
  for (int a = 0; a < n; ++a) {
    auto block = nlohmann::ordered_json::array();
    for (int b = 0; b < n; ++b) {
      auto row = nlohmann::ordered_json::array();
      for (int c = 0; c < n; ++c) row.push_back(t(a, b, c));
      block.push_back(row);
    }
    out.push_back(block);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json dump_tensors(const ModelSpec& model, std::span<const double> x) {
  const LocalStructure ls(model.structure, x);
  const int n = ls.dim();
  nlohmann::ordered_json out;
  out["model"] = model.name;
  out["point"] = std::vector<double>(x.begin(), x.end());
  out["metric"] = rows(ls.metric());
  out["christoffel"] = cube(ls.christoffel(), n);
  auto riemann = nlohmann::ordered_json::array();
  const auto& R = ls.riemann();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (std::abs(R(a, b, c, d)) > 1e-12) riemann.push_back({{"index", {a, b, c, d}}, {"value", R(a, b, c, d)}});
  out["riemann"] = riemann;
  out["theta"] = rows(ls.theta_matrix());
  out["xi"] = vec(ls.xi());
  out["eta"] = vec(ls.eta());
  out["xi_norm"] = ls.norm(ls.xi());
  Mat dxi(n, n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) dxi(a, c) = ls.dxi()(a, c);
  out["nabla_xi"] = rows(dxi);
  out["nabla_theta"] = cube(ls.dtheta(), n);
  return out;
}

std::string dump_text(const nlohmann::ordered_json& dump) {
  std::ostringstream os;
  os.precision(12);
  for (const auto& [key, value] : dump.items()) {
    if (key == "riemann") {
      os << key << " (R^a_bcd, c < d, nonzero)\n";
      for (const auto& e : value) {
        const auto& i = e["index"];
        os << "  [" << i[0] << i[1] << i[2] << i[3] << "] " << e["value"].get<double>() << "\n";
      }
    } else if (value.is_array() && !value.empty() && value[0].is_array()) {
      os << key << "\n";
      for (const auto& row : value) os << "  " << row.dump() << "\n";
    } else {
      os << key << " " << value.dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace nchv

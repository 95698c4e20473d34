// Command-line front end: verify, dump, models.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "nchv/verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

nchv::Point parse_point(const std::string& text) {
  nchv::Point x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw nchv::ConfigError("bad coordinate '" + item + "' in --point");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw nchv::ConfigError("bad coordinate '" + item + "' in --point");
    x.push_back(v);
  }
  if (x.empty()) throw nchv::ConfigError("--point needs comma-separated coordinates");
  return x;
}

int write_output(const std::string& body, const std::string& out) {
  if (out.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot open " << out << " for writing\n";
    return kExitUsage;
  }
  f << body;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise verification of almost contact identities on model manifolds"};
  app.require_subcommand(1);

  nchv::SuiteConfig cfg;
  std::string suite = "all";
  std::string out;
  auto* verify = app.add_subcommand("verify", "Evaluate identities at seeded sample points");
  verify->add_option("--model", cfg.model, "Model name (see `models`)")->required();
  verify->add_option("--suite", suite, "all, or a comma-separated list such as I1,I5")->capture_default_str();
  verify->add_option("--samples", cfg.samples, "Samples per identity")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
  verify->add_option("--tol", cfg.tolerance, "Pass tolerance on normalized residuals")->capture_default_str();
  verify->add_option("--control-threshold", cfg.control_threshold, "Residual a control must reach to fail as expected")
      ->capture_default_str();
  verify->add_option("--format", cfg.format, "json or text")->capture_default_str();
  verify->add_option("--out", out, "Write the report here instead of stdout");
  verify->add_option("--threads", cfg.threads, "Worker threads, 0 for all cores")->capture_default_str();

  std::string dump_model, point_text, dump_format = "text";
  auto* dump = app.add_subcommand("dump", "Print chart tensors at a point");
  dump->add_option("--model", dump_model, "Model name")->required();
  dump->add_option("--point", point_text, "Comma-separated chart coordinates")->required();
  dump->add_option("--format", dump_format, "json or text")->capture_default_str();

  auto* models = app.add_subcommand("models", "List the model registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      cfg.identities = nchv::parse_suite(suite);
      const auto report = nchv::run_suite(cfg);
      const std::string body = cfg.format == "json" ? nchv::to_json(report).dump(2) + "\n" : nchv::to_text(report);
      if (int rc = write_output(body, out)) return rc;
      return report.pass ? kExitPass : kExitFail;
    }
    if (dump->parsed()) {
      if (dump_format != "json" && dump_format != "text") throw nchv::ConfigError("format must be json or text");
      const auto& model = nchv::find_model(dump_model);
      const auto j = nchv::dump_tensors(model, parse_point(point_text));
      std::cout << (dump_format == "json" ? j.dump(2) + "\n" : nchv::dump_text(j));
      return kExitPass;
    }
    if (models->parsed()) {
      for (const auto& m : nchv::model_registry())
        std::cout << m.name << "\t" << nchv::to_string(m.classification) << "\t" << m.description << "\n";
      return kExitPass;
    }
  } catch (const nchv::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nchv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nchv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

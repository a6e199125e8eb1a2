#include <cstdint>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "coeffspec/io.hpp"

using namespace coeffspec;

namespace {

Format to_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "dot") return Format::Dot;
  return Format::Text;
}

struct SystemView {
  AbstractPDS pds;
  DeltaLadder ladder;
};

SystemView load_system(const std::string& model_path, const std::string& pds_path) {
  AbstractPDS pds = model_path.empty() ? parse_pds(read_file(pds_path))
                                       : induced_system(parse_model(read_file(model_path)));
  DeltaLadder ladder = delta_ladder(pds);
  return {std::move(pds), std::move(ladder)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for the spectrum of minimal coefficient algebras"};
  app.require_subcommand(1);

  std::string model_file;
  std::string pds_file;
  std::string format = "text";
  std::string level = "all";
  int depth = -1;
  bool upper = false;
  int count = 100;
  int size_max = 8;
  std::uint64_t seed = 0;
  bool singletons = false;
  bool per_model = false;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model_file, "concrete model JSON file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_model_or_pds = [&](CLI::App* sub) {
    auto* m = sub->add_option("--model", model_file, "concrete model JSON file")
                  ->check(CLI::ExistingFile);
    auto* p = sub->add_option("--pds", pds_file, "abstract system JSON file")
                  ->check(CLI::ExistingFile);
    m->excludes(p);
    p->excludes(m);
  };
  auto add_format = [&](CLI::App* sub, bool with_dot) {
    std::vector<std::string> allowed = {"text", "json"};
    if (with_dot) allowed.push_back("dot");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
  };

  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check the standing hypotheses of a concrete model");
  add_model(cmd_validate);
  add_format(cmd_validate, false);

  CLI::App* cmd_analyze = app.add_subcommand(
      "analyze", "operator class, induced system, ladder, dual endomorphism witness");
  add_model(cmd_analyze);
  add_format(cmd_analyze, false);

  CLI::App* cmd_spectrum =
      app.add_subcommand("spectrum", "predicted spectrum of a model or dynamical system");
  add_model_or_pds(cmd_spectrum);
  add_format(cmd_spectrum, true);
  cmd_spectrum->add_option("--depth", depth, "materialize chain levels up to this index");
  cmd_spectrum->add_flag("--upper", upper, "include the unrestricted families");

  CLI::App* cmd_oracle =
      app.add_subcommand("oracle", "atoms and character sequences from the matrix model");
  add_model(cmd_oracle);
  add_format(cmd_oracle, false);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "cross-check the predicted spectrum against the oracle");
  add_model(cmd_verify);
  add_format(cmd_verify, false);
  cmd_verify->add_option("--level", level, "embed, lower, equal, or all")
      ->check(CLI::IsMember({"embed", "lower", "equal", "all"}));

  CLI::App* cmd_fuzz =
      app.add_subcommand("fuzz", "verify a deterministic stream of random models");
  add_format(cmd_fuzz, false);
  cmd_fuzz->add_option("--count", count, "number of models");
  cmd_fuzz->add_option("--size-max", size_max, "largest ground set size");
  cmd_fuzz->add_option("--seed", seed, "RNG seed");
  cmd_fuzz->add_flag("--singletons", singletons, "use singleton partitions only");
  cmd_fuzz->add_flag("--per-model", per_model, "emit one line per model");

  CLI::App* cmd_dot =
      app.add_subcommand("export-dot", "alpha graph and chain families as graphviz");
  add_model_or_pds(cmd_dot);
  cmd_dot->add_option("--depth", depth, "materialize chain levels up to this index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is an input error, not a failed verdict
  }

  try {
    if (*cmd_validate) {
      ConcreteModel model = parse_model(read_file(model_file));
      ValidationReport report = validate_concrete(model);
      std::cout << render_validation(model, report, to_format(format));
      return report.all_ok() ? 0 : 1;
    }

    if (*cmd_analyze) {
      ConcreteModel model = parse_model(read_file(model_file));
      std::cout << render_analysis(model, to_format(format));
      return 0;
    }

    if (*cmd_spectrum) {
      if (model_file.empty() && pds_file.empty())
        throw ParseError("spectrum needs --model or --pds");
      SystemView sys = load_system(model_file, pds_file);
      SpectrumDescription spec = upper ? upper_spectrum(sys.pds, sys.ladder)
                                       : predicted_spectrum(sys.pds, sys.ladder);
      if (depth >= 0) {
        spec.hat = expand_levels(sys.pds, spec.hat, depth);
        if (spec.upper) *spec.upper = expand_levels(sys.pds, *spec.upper, depth);
      }
      std::cout << render_spectrum(sys.pds, sys.ladder, spec, to_format(format));
      return 0;
    }

    if (*cmd_oracle) {
      ConcreteModel model = parse_model(read_file(model_file));
      OracleSpectrum oracle = character_sequences(model);
      CoefficientAxiomReport axioms = check_coefficient_axioms(model, oracle.atoms);
      std::cout << render_oracle(model, oracle, axioms, to_format(format));
      return axioms.all_ok() ? 0 : 1;
    }

    if (*cmd_verify) {
      ConcreteModel model = parse_model(read_file(model_file));
      std::vector<TheoremReport> reports;
      if (level == "embed") {
        reports = {verify_embedding(model)};
      } else if (level == "lower") {
        reports = {verify_lower_bound(model)};
      } else if (level == "equal") {
        reports = {verify_equality(model), verify_via_extension(model)};
      } else {
        reports = verify_all(model);
      }
      std::cout << render_verify(reports, to_format(format));
      for (const auto& r : reports)
        if (r.failed()) return 1;
      return 0;
    }

    if (*cmd_fuzz) {
      FuzzConfig cfg;
      cfg.count = count;
      cfg.max_size = size_max;
      cfg.seed = seed;
      cfg.strategy = singletons ? FuzzConfig::PartitionStrategy::Singletons
                                : FuzzConfig::PartitionStrategy::RandomCompatible;
      cfg.granularity = per_model ? FuzzConfig::Granularity::PerModel
                                  : FuzzConfig::Granularity::Summary;
      FuzzReport report = fuzz(cfg);
      std::cout << render_fuzz(report, to_format(format));
      return report.all_passed() ? 0 : 1;
    }

    if (*cmd_dot) {
      if (model_file.empty() && pds_file.empty())
        throw ParseError("export-dot needs --model or --pds");
      SystemView sys = load_system(model_file, pds_file);
      SpectrumDescription spec = predicted_spectrum(sys.pds, sys.ladder);
      if (depth >= 0) spec.hat = expand_levels(sys.pds, spec.hat, depth);
      std::cout << render_spectrum(sys.pds, sys.ladder, spec, Format::Dot);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>

#include "report.hpp"
#include "thompson/export.hpp"

#ifndef THOMPSON_FIXTURE_DIR
#define THOMPSON_FIXTURE_DIR "fixtures"
#endif

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kParseError = 2;
constexpr int kBudgetExceeded = 3;

std::vector<std::filesystem::path> fixture_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace thompson;
  CLI::App app{"Subgroups of Thompson's group F: cores, orbits, generation and solvability"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string format = "text";
  bool closure_gens = false;
  std::size_t budget = Budget{}.max_rules;
  std::string period;
  std::optional<std::uint64_t> seed;
  bool all_fixtures = false;
  std::string fixture_dir = THOMPSON_FIXTURE_DIR;

  auto* analyze = app.add_subcommand("analyze", "Analyze subgroups given as generator files");
  analyze->add_option("files", files, "Generator files");
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  analyze->add_flag("--closure-gens,!--no-closure-gens", closure_gens,
                    "Run completion and extract generators of the closure");
  analyze->add_option("--budget", budget, "Maximum number of rewriting rules");
  analyze->add_option("--period", period, "Period word s for the rational-orbit test");
  analyze->add_option("--seed", seed, "Shuffle the folding order with this seed");
  analyze->add_flag("--all-fixtures", all_fixtures, "Analyze every fixture and check expectations");
  analyze->add_option("--fixture-dir", fixture_dir, "Fixture directory");

  std::string target;
  std::string file;
  std::string export_format = "dot";
  auto* exp = app.add_subcommand("export", "Export a view of the core");
  exp->add_option("target", target, "core, gamma, pgraph or mintree")
      ->required()
      ->check(CLI::IsMember({"core", "gamma", "pgraph", "mintree"}));
  exp->add_option("file", file, "Generator file")->required();
  exp->add_option("--format", export_format, "Output format")->check(CLI::IsMember({"dot", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*exp) {
      cli::SubgroupSpec spec = cli::load_spec(file);
      std::cout << export_view(build_core(spec.generators), parse_export_target(target),
                               parse_export_format(export_format));
      return kOk;
    }

    std::vector<std::filesystem::path> paths(files.begin(), files.end());
    if (all_fixtures) {
      auto found = fixture_files(fixture_dir);
      paths.insert(paths.end(), found.begin(), found.end());
    }
    if (paths.empty()) {
      std::cerr << "no input files\n";
      return kParseError;
    }
    std::vector<cli::SubgroupSpec> specs;
    for (const auto& p : paths) specs.push_back(cli::load_spec(p));

    cli::AnalyzeOptions options;
    options.closure_generators = closure_gens;
    options.budget.max_rules = budget;
    if (!period.empty()) options.period = period;
    options.seed = seed;

    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    bool exceeded = false;
    bool mismatch = false;
    for (const auto& spec : specs) {
      cli::Report r = cli::analyze(spec, options);
      exceeded |= r.budget_exceeded;
      mismatch |= !r.mismatches.empty();
      if (format == "json") {
        reports.push_back(r.json);
      } else {
        std::cout << cli::render_text(spec, r);
      }
    }
    if (format == "json") {
      nlohmann::ordered_json out;
      out["schema"] = 1;
      out["reports"] = reports;
      std::cout << out.dump(2) << '\n';
    }
    if (exceeded) return kBudgetExceeded;
    return mismatch ? kMismatch : kOk;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }
}

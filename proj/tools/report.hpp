#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thompson/closure.hpp"
#include "thompson/element.hpp"

namespace thompson::cli {

// A subgroup read from a file: one generator per line, '#' comments, and
// optional "# expect key=value ..." lines.
struct SubgroupSpec {
  std::string name;
  std::vector<std::string> texts;
  std::vector<Element> generators;
  std::map<std::string, std::string> expectations;
};

// Throws ParseError on unreadable files or malformed generators.
SubgroupSpec load_spec(const std::filesystem::path& path);

struct AnalyzeOptions {
  bool closure_generators = false;
  Budget budget;
  std::optional<std::string> period;
  std::optional<std::uint64_t> seed;
};

struct Report {
  nlohmann::ordered_json json;
  // Flat key=value observations used for expectations and text output.
  std::vector<std::pair<std::string, std::string>> observed;
  bool budget_exceeded = false;
  std::vector<std::string> mismatches;
};

Report analyze(const SubgroupSpec& spec, const AnalyzeOptions& options);
std::string render_text(const SubgroupSpec& spec, const Report& report);

}  // namespace thompson::cli

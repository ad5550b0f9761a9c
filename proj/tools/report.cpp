#include "report.hpp"

#include <fstream>
#include <sstream>

#include "thompson/decision.hpp"
#include "thompson/solvability.hpp"

namespace thompson::cli {

namespace {

using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const char* flag(bool b) { return b ? "true" : "false"; }

ordered_json lattice_json(const Lattice2& l) {
  ordered_json basis = ordered_json::array();
  for (auto [a, b] : l.basis()) basis.push_back({a, b});
  return {{"basis", basis}, {"full", l.full()}};
}

}  // namespace

SubgroupSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  SubgroupSpec spec;
  spec.name = path.stem().string();
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      std::string rest = trim(body.substr(1));
      if (rest.rfind("expect", 0) != 0) continue;
      std::istringstream pairs(rest.substr(6));
      std::string kv;
      while (pairs >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
          throw ParseError(path.string() + ":" + std::to_string(number) + ": expected key=value");
        }
        spec.expectations[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      continue;
    }
    try {
      spec.generators.push_back(parse_element(body));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
    spec.texts.push_back(body);
  }
  return spec;
}

Report analyze(const SubgroupSpec& spec, const AnalyzeOptions& options) {
  Report r;
  const auto note = [&](const std::string& key, const std::string& value) { r.observed.emplace_back(key, value); };

  FoldOptions fold;
  fold.shuffle_seed = options.seed;
  CoreAutomaton core = build_core(spec.generators, fold);
  OrbitCount orbits = dyadic_orbit_count(core);
  Verdict verdict = generates_F(spec.generators);
  Solvability solv = solvability(core);

  note("edges", std::to_string(core.edge_count()));
  note("cells", std::to_string(core.cells().size()));
  note("inner_edges", std::to_string(core.inner_edges().size()));
  note("inner_vertices", std::to_string(core.inner_vertices().size()));
  note("orbits", orbits.infinite ? "infinite" : std::to_string(orbits.count));
  note("closure_contains_derived", flag(verdict.closure_contains_derived));
  note("abelianization_full", flag(verdict.abelianization_full));
  note("contains_derived", flag(verdict.contains_derived));
  note("equals_F", flag(verdict.equals_F));
  note("solvable", flag(solv.solvable));
  if (solv.solvable) note("derived_length", std::to_string(solv.derived_length));

  ordered_json generators = ordered_json::array();
  for (const auto& g : spec.generators) generators.push_back(g.str());
  ordered_json j;
  j["name"] = spec.name;
  j["generators"] = generators;
  j["core"] = {{"edges", core.edge_count()},
               {"cells", core.cells().size()},
               {"vertices", core.vertex_count()},
               {"inner_edges", core.inner_edges().size()},
               {"inner_vertices", core.inner_vertices().size()},
               {"minimal_tree", minimal_tree(core).str()}};
  j["orbits"] = orbits.infinite ? ordered_json("infinite") : ordered_json(orbits.count);
  j["verdict"] = {{"closure_contains_derived", verdict.closure_contains_derived},
                  {"abelianization_full", verdict.abelianization_full},
                  {"abelianization_basis", "endpoint slopes (log2 f'(0+), log2 f'(1-))"},
                  {"slope_lattice", verdict.slope_lattice ? lattice_json(*verdict.slope_lattice) : ordered_json(nullptr)},
                  {"contains_derived", verdict.contains_derived},
                  {"equals_F", verdict.equals_F}};
  j["solvability"] = {{"solvable", solv.solvable},
                      {"derived_length", solv.solvable ? ordered_json(solv.derived_length) : ordered_json(nullptr)}};

  std::optional<std::string> period = options.period;
  if (!period) {
    if (auto it = spec.expectations.find("period"); it != spec.expectations.end()) period = it->second;
  }
  if (period) {
    bool transitive = transitive_on_period_orbit(core, *period);
    note("period", *period);
    note("period_transitive", flag(transitive));
    j["period"] = {{"s", *period}, {"transitive", transitive}};
  }

  if (options.closure_generators) {
    RewriteSystem rs = complete(presentation(core), options.budget);
    ordered_json c;
    c["status"] = rs.complete() ? "complete" : "budget_exceeded";
    c["rules"] = rs.rules.size();
    note("completion", rs.complete() ? "complete" : "budget_exceeded");
    if (rs.complete()) {
      auto gens = closure_generators(core, rs);
      auto pruned = prune_generators(gens, core);
      ordered_json all = ordered_json::array();
      ordered_json kept = ordered_json::array();
      for (const auto& g : gens) all.push_back(render(normal_form(g)));
      for (const auto& g : pruned) kept.push_back(render(normal_form(g)));
      c["generators"] = all;
      c["pruned"] = kept;
      note("closure_generators", std::to_string(gens.size()));
      note("closure_generators_pruned", std::to_string(pruned.size()));
    } else {
      r.budget_exceeded = true;
    }
    j["closure"] = c;
  }

  for (const auto& [key, want] : spec.expectations) {
    if (key == "period") continue;
    auto it = std::find_if(r.observed.begin(), r.observed.end(), [&](const auto& kv) { return kv.first == key; });
    std::string got = it == r.observed.end() ? "(absent)" : it->second;
    if (got != want) r.mismatches.push_back(key + ": expected " + want + ", got " + got);
  }
  if (!spec.expectations.empty()) {
    j["expectations"] = {{"checked", spec.expectations.size()}, {"mismatches", r.mismatches}};
  }
  r.json = std::move(j);
  return r;
}

std::string render_text(const SubgroupSpec& spec, const Report& report) {
  std::ostringstream out;
  out << spec.name << '\n';
  for (const auto& t : spec.texts) out << "  generator " << t << '\n';
  for (const auto& [k, v] : report.observed) out << "  " << k << ": " << v << '\n';
  if (const auto* c = report.json.contains("closure") ? &report.json["closure"] : nullptr) {
    if (c->contains("pruned")) {
      for (const auto& g : (*c)["pruned"]) out << "  closure generator " << g.get<std::string>() << '\n';
    }
  }
  for (const auto& m : report.mismatches) out << "  MISMATCH " << m << '\n';
  return out.str();
}

}  // namespace thompson::cli

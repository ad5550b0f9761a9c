#pragma once

#include <string>
#include <string_view>

#include "thompson/core.hpp"

namespace thompson {

enum class ExportTarget { core, gamma, pgraph, mintree };
enum class ExportFormat { dot, json };

// Throws std::invalid_argument on an unknown name.
ExportTarget parse_export_target(std::string_view name);
ExportFormat parse_export_format(std::string_view name);

// Deterministic text for the chosen view of the automaton; edges appear under
// their canonical names.
std::string export_view(const CoreAutomaton& core, ExportTarget target, ExportFormat format);

}  // namespace thompson

#pragma once

// JSON documents used by the command-line tool.
//
// Patch:  {"family": "explicit" | "translation" | "aminov" | "gradient",
//          "exprs": {"f","g"} | {"f3","f4","g3","g4"} | {"r"} | {"p","q"},
//          "domain": {"u": [lo, hi], "v": [lo, hi]}}   (domain and sides optional)
// Report: {"<predicate>": {"max_residual", "normalized_residual", "verdict"}, ...,
//          "first_normal_rank", "chen_qualifier", "grid", "tolerances", ...}

#include <string>

#include <json.hpp>

#include "monge4/classify.hpp"
#include "monge4/invariants.hpp"
#include "monge4/patch.hpp"

namespace monge4 {

nlohmann::ordered_json patch_to_json(const MongePatch& patch);
/// Throws ValidationError on schema violations, ParseError on bad expressions.
MongePatch patch_from_json(const nlohmann::json& doc);
MongePatch load_patch_file(const std::string& path);

nlohmann::ordered_json invariants_to_json(const InvariantSet& inv);
nlohmann::ordered_json grid_to_json(const GridSpec& grid);
nlohmann::ordered_json report_to_json(const ClassificationReport& report);

}  // namespace monge4

#pragma once

#include <string>

#include "json.hpp"

#include "graphon_ldp/graph.hpp"
#include "graphon_ldp/graphon.hpp"

namespace gldp {

// {"gamma": [["1","3"],["2","3"]], "values": [[0.0,0.5],[0.5,0.0]]}
// Widths may also be given as "a/b" strings or integers. Errors name the
// offending field.
StepGraphon graphon_from_json(const nlohmann::json& doc);
nlohmann::json graphon_to_json(const StepGraphon& f);
StepGraphon parse_graphon(const std::string& text);
StepGraphon load_graphon(const std::string& path);
void save_graphon(const StepGraphon& f, const std::string& path);

// First line "v e", then e lines "a b" with 1-based endpoints. Blank lines
// and lines starting with '#' are skipped. Errors name the offending line.
FiniteGraph parse_graph(const std::string& text);
FiniteGraph load_graph(const std::string& path);
std::string graph_to_text(const FiniteGraph& graph);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Locale-independent %.17g.
std::string format_double(double x);

}  // namespace gldp

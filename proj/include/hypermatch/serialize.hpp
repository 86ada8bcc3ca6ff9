#pragma once

#include <string>

#include <json.hpp>

#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

// {"m":..,"d":..,"l":..,"vertex_of":[..]}
nlohmann::json to_json(const Hypergraph& g);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// "m d l : v0 v1 ... v_{lm-1}"
std::string to_text(const Hypergraph& g);
Hypergraph hypergraph_from_text(const std::string& line);

}  // namespace hypermatch

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hcp/model.hpp"

namespace hcp {

using json = nlohmann::json;

struct GraphFile {
    ColoredGraph graph;
    ColorWeights alpha;
};

json graph_to_json(const ColoredGraph& g, const ColorWeights& alpha);
GraphFile graph_from_json(const json& j);

json digraph_to_json(const ColoredDigraph& d, const ColorWeights& alpha);
ColoredDigraph digraph_from_json(const json& j);

json certificate_to_json(const HamiltonCertificate& c);
HamiltonCertificate certificate_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace hcp

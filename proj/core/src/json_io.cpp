#include "hcp/json_io.hpp"

#include <fstream>

namespace hcp {

json graph_to_json(const ColoredGraph& g, const ColorWeights& alpha) {
    json j;
    j["n"] = g.n();
    j["r"] = g.r();
    j["alpha"] = alpha.values();
    json es = json::array();
    for (auto& e : g.edges()) es.push_back({e.u, e.v, e.color});
    j["edges"] = std::move(es);
    return j;
}

namespace {

ColorWeights alpha_or_uniform(const json& j, int r) {
    if (j.contains("alpha") && !j["alpha"].empty()) {
        auto a = j["alpha"].get<std::vector<double>>();
        if (static_cast<int>(a.size()) != r) throw InputError("alpha length differs from r");
        return ColorWeights(std::move(a));
    }
    return ColorWeights::uniform(r);
}

}  // namespace

GraphFile graph_from_json(const json& j) {
    try {
        int n = j.at("n").get<int>();
        int r = j.at("r").get<int>();
        std::vector<Edge> es;
        for (auto& e : j.at("edges")) {
            if (e.size() != 3) throw InputError("edge entries must be [u,v,color]");
            es.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<Color>()});
        }
        return {ColoredGraph(n, r, std::move(es)), alpha_or_uniform(j, r)};
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed graph json: ") + ex.what());
    }
}

json digraph_to_json(const ColoredDigraph& d, const ColorWeights& alpha) {
    json j;
    j["n"] = d.n();
    j["r"] = d.r();
    j["alpha"] = alpha.values();
    json as = json::array();
    for (auto& a : d.arcs()) as.push_back({a.from, a.to, a.color});
    j["arcs"] = std::move(as);
    return j;
}

ColoredDigraph digraph_from_json(const json& j) {
    try {
        std::vector<Arc> as;
        for (auto& a : j.at("arcs")) {
            if (a.size() != 3) throw InputError("arc entries must be [from,to,color]");
            as.push_back({a[0].get<Vertex>(), a[1].get<Vertex>(), a[2].get<Color>()});
        }
        return ColoredDigraph(j.at("n").get<int>(), j.at("r").get<int>(), std::move(as));
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed digraph json: ") + ex.what());
    }
}

json certificate_to_json(const HamiltonCertificate& c) {
    return json{{"order", c.order}, {"boundaries", c.boundaries}};
}

HamiltonCertificate certificate_from_json(const json& j) {
    try {
        HamiltonCertificate c;
        c.order = j.at("order").get<std::vector<Vertex>>();
        c.boundaries = j.at("boundaries").get<std::vector<int>>();
        return c;
    } catch (const json::exception& ex) {
        throw InputError(std::string("malformed certificate json: ") + ex.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw InputError(path + ": " + ex.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump() << '\n';
}

}  // namespace hcp

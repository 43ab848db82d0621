#include "ontoclust/export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ontoclust {

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string weight_label(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", w);
    return buf;
}

// DOT node names carry a kind prefix so class/attribute/user ids never clash
std::string node_name(const GraphNode& n) {
    switch (n.kind) {
    case NodeKind::Class: return "C:" + n.id;
    case NodeKind::Attribute: return "A:" + n.id;
    case NodeKind::User: break;
    }
    return "U:" + n.id;
}

} // namespace

std::string dot_of_graph(const WeightedGraph& graph, const Ontology* ontology) {
    std::ostringstream out;
    out << "graph user_ontology {\n";
    for (const auto& n : graph.nodes()) {
        std::string label = n.id;
        std::string shape;
        switch (n.kind) {
        case NodeKind::Class:
            if (ontology)
                if (const auto* c = ontology->find_class(n.id))
                    label = c->name;
            shape = "shape=ellipse";
            break;
        case NodeKind::Attribute:
            if (ontology)
                if (const auto* a = ontology->find_attribute(n.id))
                    label = a->name;
            shape = "shape=ellipse, style=dashed";
            break;
        case NodeKind::User:
            shape = "shape=box";
            break;
        }
        out << "  " << dot_quote(node_name(n)) << " [" << shape
            << ", label=" << dot_quote(label) << "];\n";
    }
    for (std::size_t i = 0; i < graph.nodes().size(); ++i)
        for (const auto& [j, w] : graph.neighbors(i))
            if (i < j)
                out << "  " << dot_quote(node_name(graph.nodes()[i])) << " -- "
                    << dot_quote(node_name(graph.nodes()[j]))
                    << " [label=" << dot_quote(weight_label(w)) << "];\n";
    out << "}\n";
    return out.str();
}

std::string dot_of_distances(const DistanceTable& table) {
    std::ostringstream out;
    out << "graph user_distances {\n";
    for (const auto& u : table.users())
        out << "  " << dot_quote("U:" + u) << " [shape=box, label=" << dot_quote(u) << "];\n";
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = i + 1; j < table.size(); ++j) {
            double w = table.at(i, j);
            if (!std::isinf(w))
                out << "  " << dot_quote("U:" + table.users()[i]) << " -- "
                    << dot_quote("U:" + table.users()[j])
                    << " [label=" << dot_quote(weight_label(w)) << "];\n";
        }
    out << "}\n";
    return out.str();
}

std::string dot_of_clustering(const Clustering& clustering, const DistanceTable* distances) {
    std::ostringstream out;
    out << "graph clusters {\n";
    std::size_t idx = 0;
    for (const auto& c : clustering.clusters) {
        out << "  subgraph cluster_" << idx++ << " {\n";
        out << "    label=" << dot_quote("mass " + weight_label(c.mass)) << ";\n";
        for (const auto& m : c.members)
            out << "    " << dot_quote("U:" + m) << " [shape=box, label=" << dot_quote(m)
                << "];\n";
        out << "  }\n";
    }
    if (distances) {
        for (std::size_t i = 0; i < distances->size(); ++i)
            for (std::size_t j = i + 1; j < distances->size(); ++j) {
                double w = distances->at(i, j);
                if (!std::isinf(w))
                    out << "  " << dot_quote("U:" + distances->users()[i]) << " -- "
                        << dot_quote("U:" + distances->users()[j])
                        << " [label=" << dot_quote(weight_label(w)) << "];\n";
            }
    } else {
        for (const auto& step : clustering.merge_log)
            out << "  " << dot_quote("U:" + step.into) << " -- " << dot_quote("U:" + step.from)
                << " [label=" << dot_quote(weight_label(step.arc_weight)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace ontoclust

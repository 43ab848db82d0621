#pragma once

#include "ontoclust/clustering.hpp"
#include "ontoclust/graph.hpp"

#include <string>

namespace ontoclust {

/// Graphviz DOT of a user-ontology graph: classes drawn as ovals, attributes
/// as dashed ovals, users as boxes; arc labels carry weights with 4 decimals.
/// Node labels resolve to ontology names when an ontology is supplied.
std::string dot_of_graph(const WeightedGraph& graph, const Ontology* ontology = nullptr);

/// DOT of the user-user distance graph (finite arcs only).
std::string dot_of_distances(const DistanceTable& table);

/// DOT with one enclosing subgraph box per cluster; arcs come from the
/// distance table when given, otherwise from the merge log.
std::string dot_of_clustering(const Clustering& clustering,
                              const DistanceTable* distances = nullptr);

} // namespace ontoclust

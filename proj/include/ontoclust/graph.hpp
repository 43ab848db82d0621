#pragma once

#include "ontoclust/ontology.hpp"
#include "ontoclust/similarity.hpp"

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ontoclust {

enum class NodeKind { Class, Attribute, User };

struct GraphNode {
    std::string id;
    NodeKind kind = NodeKind::User;
};

/// Administrator-chosen arc weights. epsilon is the positive floor that
/// replaces zero weights so perfect matches still contribute path length.
struct GraphParams {
    double cc_weight = 0.2;
    double ca_weight = 0.2;
    double epsilon = 0.001;

    /// DomainError unless epsilon in (0,1) and both weights in [epsilon, 1).
    void validate() const;
};

/// Undirected weighted graph; absent arc == infinity, diagonal == 0, every
/// stored arc weight is finite and > 0.
class WeightedGraph {
public:
    static constexpr double infinity() { return std::numeric_limits<double>::infinity(); }

    std::size_t add_node(GraphNode node);
    void add_arc(std::size_t i, std::size_t j, double weight);

    double weight(std::size_t i, std::size_t j) const;
    const std::vector<GraphNode>& nodes() const { return nodes_; }
    const std::map<std::size_t, double>& neighbors(std::size_t i) const { return adjacency_[i]; }
    std::optional<std::size_t> find(NodeKind kind, std::string_view id) const;
    std::size_t arc_count() const { return arc_count_; }

private:
    std::vector<GraphNode> nodes_;
    std::vector<std::map<std::size_t, double>> adjacency_;
    std::size_t arc_count_ = 0;
};

struct UserProfile {
    std::string user_id;
    std::map<std::string, std::string> personal;
    std::vector<SimilarityReport> reports;
};

/// Combined arc weight for one (class-or-attribute, user) pair over that
/// user's per-request similarities: w = 1 - sum(1 - w_i)/n_max with
/// w_i = max(epsilon, 1 - sim_i), floored at epsilon. n_max is the largest
/// per-pair occurrence count over the whole corpus, so more matching
/// requests always mean a smaller (stronger) arc weight.
double aggregate_arc_weight(std::span<const double> sims, std::size_t n_max, double epsilon);

/// Builds the user-ontology graph: CC arcs between child and parent classes,
/// CA arcs between attributes and owners, CU/AU arcs from report scores.
/// Users with no reported matches stay isolated.
WeightedGraph build_user_ontology_graph(std::span<const UserProfile> profiles,
                                        const Ontology& ontology, const GraphParams& params);

/// Symmetric user-to-user shortest-path distances; infinity when no path.
class DistanceTable {
public:
    DistanceTable() = default;
    DistanceTable(std::vector<std::string> users, std::vector<double> distances);

    const std::vector<std::string>& users() const { return users_; }
    std::size_t size() const { return users_.size(); }
    double at(std::size_t i, std::size_t j) const { return distances_[i * users_.size() + j]; }
    double between(std::string_view u, std::string_view v) const;

    std::string to_csv() const;
    static DistanceTable from_csv(std::string_view csv);

private:
    std::vector<std::string> users_;
    std::vector<double> distances_; // row-major size() x size()
};

/// Shortest paths between every pair of users, running the pivot relaxation
/// over all nodes of g0 (paths routinely cross class/attribute nodes).
DistanceTable all_pairs_user_distances(const WeightedGraph& g0);

} // namespace ontoclust

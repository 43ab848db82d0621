#pragma once

#include "ontoclust/graph.hpp"

#include <string>
#include <vector>

namespace ontoclust {

struct Cluster {
    std::vector<std::string> members; // sorted lexicographically
    double mass = 0.0;                // 0 for singletons
};

struct MergeStep {
    std::string into; // surviving node (lexicographically smaller id)
    std::string from; // absorbed node
    double arc_weight = 0.0;
    double resulting_mass = 0.0;
};

struct Clustering {
    std::vector<Cluster> clusters; // a partition of the users, sorted by first member
    std::vector<MergeStep> merge_log;
};

/// Greedy agglomeration over the user-user distance table: every finite arc
/// seeds a candidate A = arc + D_i + D_j; the minimum candidate (ties broken
/// by lexicographic id pair) is merged while A <= d_max, the merged mass is
/// arc + D_i + D_j, and parallel arcs combine by minimum (single linkage).
/// Infinite arcs are never candidates. DomainError if d_max <= 0.
Clustering cluster_users(const DistanceTable& g2, double d_max);

/// Mass the merge recurrence accumulates on the subgraph induced by the
/// cluster members, recomputed from the distance table alone; for clusters
/// produced by cluster_users this reproduces Cluster::mass exactly.
double cluster_mass(const Cluster& cluster, const DistanceTable& g2);

/// Sum of all finite arcs among the members; the audit counterpart that
/// counts every arc of the subgraph, not only the merge-tree arcs.
double subgraph_arc_sum(const Cluster& cluster, const DistanceTable& g2);

std::string clustering_to_json(const Clustering& clustering);
Clustering clustering_from_json(const std::string& text);

} // namespace ontoclust

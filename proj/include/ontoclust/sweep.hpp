#pragma once

#include "ontoclust/clustering.hpp"
#include "ontoclust/graph.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ontoclust {

struct SweepGrid {
    std::vector<double> d_max_values;    // strictly ascending, all > 0
    std::vector<double> cc_weight_values; // each in [epsilon, 1)
    double ca_weight = 0.2;
    double epsilon = 0.001;

    void validate() const;
};

struct SweepRow {
    double cc_weight = 0.0;
    double d_max = 0.0;
    std::size_t cluster_count = 0;
};

struct Plateau {
    double d_max_start = 0.0;
    double d_max_end = 0.0;
    std::size_t cluster_count = 0;
};

struct PlateauInterval : Plateau {
    double cc_weight = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows; // grid order: cc_weight outer, d_max inner
    std::vector<PlateauInterval> plateaus;
    std::size_t user_count = 0;
};

/// Maximal runs of >= 2 consecutive curve points with equal cluster count,
/// where 1 < count < user_count. The curve must be sorted by d_max.
std::vector<Plateau> find_plateau(std::span<const std::pair<double, std::size_t>> curve,
                                  std::size_t user_count);

/// Full grid evaluation: the graph and distance table are built once per
/// cc_weight value and reclustered for every d_max.
SweepResult run_sweep(std::span<const UserProfile> profiles, const Ontology& ontology,
                      const SweepGrid& grid);

/// "cc_weight,d_max,cluster_count" rows followed by a commented plateau
/// summary block.
std::string sweep_to_csv(const SweepResult& result);

} // namespace ontoclust

#include "ontoclust/sweep.hpp"

#include "ontoclust/errors.hpp"

#include <charconv>
#include <sstream>

namespace ontoclust {

void SweepGrid::validate() const {
    if (d_max_values.empty() || cc_weight_values.empty())
        throw DomainError("sweep grid: d_max and cc_weight value lists must be non-empty");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("sweep grid: epsilon must lie in (0, 1)");
    for (std::size_t i = 0; i < d_max_values.size(); ++i) {
        if (!(d_max_values[i] > 0.0))
            throw DomainError("sweep grid: d_max values must be > 0");
        if (i > 0 && !(d_max_values[i] > d_max_values[i - 1]))
            throw DomainError("sweep grid: d_max values must be strictly ascending");
    }
    for (double cc : cc_weight_values)
        if (!(cc >= epsilon && cc < 1.0))
            throw DomainError("sweep grid: cc_weight values must lie in [epsilon, 1)");
    if (!(ca_weight >= epsilon && ca_weight < 1.0))
        throw DomainError("sweep grid: ca_weight must lie in [epsilon, 1)");
}

std::vector<Plateau> find_plateau(std::span<const std::pair<double, std::size_t>> curve,
                                  std::size_t user_count) {
    std::vector<Plateau> plateaus;
    std::size_t i = 0;
    while (i < curve.size()) {
        std::size_t j = i;
        while (j + 1 < curve.size() && curve[j + 1].second == curve[i].second)
            ++j;
        std::size_t count = curve[i].second;
        if (j > i && count > 1 && count < user_count)
            plateaus.push_back({curve[i].first, curve[j].first, count});
        i = j + 1;
    }
    return plateaus;
}

SweepResult run_sweep(std::span<const UserProfile> profiles, const Ontology& ontology,
                      const SweepGrid& grid) {
    grid.validate();
    SweepResult result;
    result.user_count = profiles.size();
    for (double cc : grid.cc_weight_values) {
        GraphParams params;
        params.cc_weight = cc;
        params.ca_weight = grid.ca_weight;
        params.epsilon = grid.epsilon;
        auto g0 = build_user_ontology_graph(profiles, ontology, params);
        auto table = all_pairs_user_distances(g0);

        std::vector<std::pair<double, std::size_t>> curve;
        curve.reserve(grid.d_max_values.size());
        for (double d_max : grid.d_max_values) {
            auto clustering = cluster_users(table, d_max);
            result.rows.push_back({cc, d_max, clustering.clusters.size()});
            curve.emplace_back(d_max, clustering.clusters.size());
        }
        for (const auto& p : find_plateau(curve, result.user_count)) {
            PlateauInterval interval;
            static_cast<Plateau&>(interval) = p;
            interval.cc_weight = cc;
            result.plateaus.push_back(interval);
        }
    }
    return result;
}

namespace {

std::string format_value(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
    return std::string(buf, end);
}

} // namespace

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "cc_weight,d_max,cluster_count\n";
    for (const auto& row : result.rows)
        out << format_value(row.cc_weight) << ',' << format_value(row.d_max) << ','
            << row.cluster_count << '\n';
    out << "# plateaus (stable cluster counts with 1 < count < " << result.user_count << ")\n";
    if (result.plateaus.empty()) {
        out << "# none\n";
    } else {
        for (const auto& p : result.plateaus)
            out << "# cc_weight=" << format_value(p.cc_weight) << " d_max=["
                << format_value(p.d_max_start) << "," << format_value(p.d_max_end)
                << "] clusters=" << p.cluster_count << '\n';
    }
    return out.str();
}

} // namespace ontoclust

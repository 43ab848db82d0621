#include "ontoclust/clustering.hpp"

#include "ontoclust/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <json.hpp>

namespace ontoclust {

namespace {

struct Candidate {
    double value = 0.0; // arc + D_i + D_j
    std::size_t i = 0;  // lexicographically smaller user id
    std::size_t j = 0;
    // snapshot for lazy invalidation: stale entries are skipped on pop
    double arc = 0.0;
    double mass_i = 0.0;
    double mass_j = 0.0;
};

struct MergeOutcome {
    std::vector<double> mass;
    std::vector<char> alive;
    std::vector<std::vector<std::size_t>> members;
    std::vector<MergeStep> merge_log;
};

// Shared agglomeration engine over an explicit id/arc view. d_max may be
// +infinity (merge until no finite candidates remain).
MergeOutcome run_merges(const std::vector<std::string>& ids,
                        const std::vector<std::map<std::size_t, double>>& initial_arcs,
                        double d_max) {
    const std::size_t n = ids.size();
    MergeOutcome out;
    out.mass.assign(n, 0.0);
    out.alive.assign(n, 1);
    out.members.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.members[i] = {i};

    auto arcs = initial_arcs;

    auto later = [&](const Candidate& a, const Candidate& b) {
        if (a.value != b.value)
            return a.value > b.value;
        if (ids[a.i] != ids[b.i])
            return ids[a.i] > ids[b.i];
        return ids[a.j] > ids[b.j];
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(later)> queue(later);

    auto push_candidate = [&](std::size_t a, std::size_t b) {
        std::size_t i = a, j = b;
        if (ids[j] < ids[i])
            std::swap(i, j);
        double arc = arcs[i].at(j);
        queue.push({arc + out.mass[i] + out.mass[j], i, j, arc, out.mass[i], out.mass[j]});
    };

    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, w] : arcs[i])
            if (i < j)
                push_candidate(i, j);

    while (!queue.empty()) {
        Candidate c = queue.top();
        queue.pop();
        if (!out.alive[c.i] || !out.alive[c.j])
            continue;
        auto arc_it = arcs[c.i].find(c.j);
        if (arc_it == arcs[c.i].end() || arc_it->second != c.arc ||
            out.mass[c.i] != c.mass_i || out.mass[c.j] != c.mass_j)
            continue; // superseded by a fresher candidate
        if (c.value > d_max)
            break; // minimum candidate already exceeds the mass bound

        const std::size_t i = c.i, j = c.j;
        out.mass[i] = c.arc + out.mass[i] + out.mass[j];
        out.alive[j] = 0;
        out.members[i].insert(out.members[i].end(), out.members[j].begin(),
                              out.members[j].end());
        out.members[j].clear();
        out.merge_log.push_back({ids[i], ids[j], c.arc, out.mass[i]});

        arcs[i].erase(j);
        for (const auto& [k, w] : arcs[j]) {
            if (k == i)
                continue;
            auto it = arcs[i].find(k);
            double combined = it == arcs[i].end() ? w : std::min(it->second, w);
            arcs[i][k] = combined;
            arcs[k].erase(j);
            arcs[k][i] = combined;
        }
        arcs[j].clear();

        // refresh candidates around the merged node (its mass changed)
        for (const auto& [k, w] : arcs[i])
            push_candidate(i, k);
    }
    return out;
}

std::vector<std::map<std::size_t, double>> arcs_from_table(const DistanceTable& table,
                                                           const std::vector<std::size_t>& nodes) {
    std::vector<std::map<std::size_t, double>> arcs(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            double w = table.at(nodes[a], nodes[b]);
            if (!std::isinf(w)) {
                arcs[a][b] = w;
                arcs[b][a] = w;
            }
        }
    return arcs;
}

} // namespace

Clustering cluster_users(const DistanceTable& g2, double d_max) {
    if (!(d_max > 0.0))
        throw DomainError("d_max must be > 0");
    std::vector<std::size_t> all(g2.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    auto outcome = run_merges(g2.users(), arcs_from_table(g2, all), d_max);

    Clustering result;
    result.merge_log = std::move(outcome.merge_log);
    for (std::size_t i = 0; i < g2.size(); ++i) {
        if (!outcome.alive[i])
            continue;
        Cluster c;
        for (std::size_t idx : outcome.members[i])
            c.members.push_back(g2.users()[idx]);
        std::sort(c.members.begin(), c.members.end());
        c.mass = outcome.mass[i];
        result.clusters.push_back(std::move(c));
    }
    std::sort(result.clusters.begin(), result.clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.members[0] < b.members[0]; });
    return result;
}

namespace {

std::vector<std::size_t> member_indices(const Cluster& cluster, const DistanceTable& g2) {
    std::vector<std::size_t> nodes;
    for (const auto& id : cluster.members) {
        bool found = false;
        for (std::size_t i = 0; i < g2.size(); ++i)
            if (g2.users()[i] == id) {
                nodes.push_back(i);
                found = true;
                break;
            }
        if (!found)
            throw DomainError("cluster member '" + id + "' not present in the distance table");
    }
    return nodes;
}

} // namespace

double cluster_mass(const Cluster& cluster, const DistanceTable& g2) {
    auto nodes = member_indices(cluster, g2);
    std::vector<std::string> ids;
    for (std::size_t idx : nodes)
        ids.push_back(g2.users()[idx]);
    auto outcome = run_merges(ids, arcs_from_table(g2, nodes),
                              std::numeric_limits<double>::infinity());
    double total = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (outcome.alive[i])
            total += outcome.mass[i];
    return total;
}

double subgraph_arc_sum(const Cluster& cluster, const DistanceTable& g2) {
    auto nodes = member_indices(cluster, g2);
    double total = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
            double w = g2.at(nodes[a], nodes[b]);
            if (!std::isinf(w))
                total += w;
        }
    return total;
}

std::string clustering_to_json(const Clustering& clustering) {
    nlohmann::ordered_json doc;
    doc["clusters"] = nlohmann::ordered_json::array();
    for (const auto& c : clustering.clusters) {
        nlohmann::ordered_json jc;
        jc["members"] = c.members;
        jc["mass"] = c.mass;
        doc["clusters"].push_back(std::move(jc));
    }
    doc["merge_log"] = nlohmann::ordered_json::array();
    for (const auto& m : clustering.merge_log) {
        nlohmann::ordered_json jm;
        jm["into"] = m.into;
        jm["from"] = m.from;
        jm["arc_weight"] = m.arc_weight;
        jm["resulting_mass"] = m.resulting_mass;
        doc["merge_log"].push_back(std::move(jm));
    }
    return doc.dump(2) + "\n";
}

Clustering clustering_from_json(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("clustering: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("clusters") || !doc["clusters"].is_array() ||
        !doc.contains("merge_log") || !doc["merge_log"].is_array())
        throw ParseError("clustering: object with 'clusters' and 'merge_log' arrays required");
    Clustering result;
    for (const auto& jc : doc["clusters"]) {
        if (!jc.is_object() || !jc.contains("members") || !jc["members"].is_array() ||
            !jc.contains("mass") || !jc["mass"].is_number())
            throw ParseError("clustering: malformed cluster entry");
        Cluster c;
        for (const auto& m : jc["members"]) {
            if (!m.is_string())
                throw ParseError("clustering: member ids must be strings");
            c.members.push_back(m.get<std::string>());
        }
        c.mass = jc["mass"].get<double>();
        result.clusters.push_back(std::move(c));
    }
    for (const auto& jm : doc["merge_log"]) {
        if (!jm.is_object() || !jm.contains("into") || !jm.contains("from") ||
            !jm.contains("arc_weight") || !jm.contains("resulting_mass"))
            throw ParseError("clustering: malformed merge_log entry");
        MergeStep m;
        m.into = jm["into"].get<std::string>();
        m.from = jm["from"].get<std::string>();
        m.arc_weight = jm["arc_weight"].get<double>();
        m.resulting_mass = jm["resulting_mass"].get<double>();
        result.merge_log.push_back(std::move(m));
    }
    return result;
}

} // namespace ontoclust

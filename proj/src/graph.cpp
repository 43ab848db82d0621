#include "ontoclust/graph.hpp"

#include "ontoclust/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace ontoclust {

void GraphParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0, 1)");
    // cc/ca weights may equal epsilon: the degenerate CC_weight = epsilon
    // setting is a meaningful experiment configuration.
    if (!(cc_weight >= epsilon && cc_weight < 1.0))
        throw DomainError("cc_weight must lie in [epsilon, 1)");
    if (!(ca_weight >= epsilon && ca_weight < 1.0))
        throw DomainError("ca_weight must lie in [epsilon, 1)");
}

std::size_t WeightedGraph::add_node(GraphNode node) {
    nodes_.push_back(std::move(node));
    adjacency_.emplace_back();
    return nodes_.size() - 1;
}

void WeightedGraph::add_arc(std::size_t i, std::size_t j, double weight) {
    if (i >= nodes_.size() || j >= nodes_.size())
        throw DomainError("add_arc: node index out of range");
    if (i == j)
        throw DomainError("add_arc: self arcs are not allowed");
    if (!(weight > 0.0) || std::isinf(weight))
        throw DomainError("add_arc: arc weight must be finite and > 0");
    if (!adjacency_[i].count(j))
        ++arc_count_;
    adjacency_[i][j] = weight;
    adjacency_[j][i] = weight;
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const {
    if (i == j)
        return 0.0;
    auto it = adjacency_[i].find(j);
    return it == adjacency_[i].end() ? infinity() : it->second;
}

std::optional<std::size_t> WeightedGraph::find(NodeKind kind, std::string_view id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].kind == kind && nodes_[i].id == id)
            return i;
    return std::nullopt;
}

double aggregate_arc_weight(std::span<const double> sims, std::size_t n_max, double epsilon) {
    if (sims.empty())
        throw DomainError("aggregate_arc_weight: no similarities");
    if (sims.size() > n_max)
        throw DomainError("aggregate_arc_weight: n_max smaller than the request count");
    double relief = 0.0; // sum of (1 - w_i)
    for (double sim : sims) {
        if (!(sim > 0.0 && sim <= 1.0))
            throw DomainError("aggregate_arc_weight: similarity outside (0, 1]");
        double wi = std::max(epsilon, 1.0 - sim);
        relief += 1.0 - wi;
    }
    return std::max(epsilon, 1.0 - relief / static_cast<double>(n_max));
}

WeightedGraph build_user_ontology_graph(std::span<const UserProfile> profiles,
                                        const Ontology& ontology, const GraphParams& params) {
    params.validate();
    WeightedGraph g;
    std::map<std::string, std::size_t, std::less<>> class_node, attr_node, user_node;
    for (const auto& c : ontology.classes())
        class_node[c.id] = g.add_node({c.id, NodeKind::Class});
    for (const auto& a : ontology.attributes())
        attr_node[a.id] = g.add_node({a.id, NodeKind::Attribute});
    for (const auto& p : profiles) {
        if (user_node.count(p.user_id))
            throw ValidationError("duplicate user id '" + p.user_id + "'");
        user_node[p.user_id] = g.add_node({p.user_id, NodeKind::User});
    }

    for (const auto& c : ontology.classes())
        if (c.parent)
            g.add_arc(class_node.at(c.id), class_node.at(*c.parent), params.cc_weight);
    for (const auto& a : ontology.attributes())
        g.add_arc(attr_node.at(a.id), class_node.at(a.owner_class), params.ca_weight);

    // per (node, user) similarity lists, aggregated user by user so the map
    // stays bounded by one user's footprint
    struct PairSims {
        std::size_t node;
        std::size_t user;
        std::vector<double> sims;
    };
    std::vector<PairSims> class_sims, attr_sims;
    std::size_t n_max_class = 0, n_max_attr = 0; // taken separately per arc family
    for (const auto& p : profiles) {
        std::size_t u = user_node.at(p.user_id);
        std::map<std::size_t, std::vector<double>> local_class, local_attr;
        for (const auto& report : p.reports) {
            for (const auto& cs : report.class_scores) {
                auto it = class_node.find(cs.class_id);
                if (it == class_node.end())
                    throw ValidationError("report '" + report.request_id +
                                          "' references unknown class '" + cs.class_id + "'");
                local_class[it->second].push_back(cs.sim);
            }
            for (const auto& as : report.attribute_scores) {
                auto it = attr_node.find(as.attribute_id);
                if (it == attr_node.end())
                    throw ValidationError("report '" + report.request_id +
                                          "' references unknown attribute '" + as.attribute_id +
                                          "'");
                local_attr[it->second].push_back(as.sim);
            }
        }
        for (auto& [node, sims] : local_class) {
            n_max_class = std::max(n_max_class, sims.size());
            class_sims.push_back({node, u, std::move(sims)});
        }
        for (auto& [node, sims] : local_attr) {
            n_max_attr = std::max(n_max_attr, sims.size());
            attr_sims.push_back({node, u, std::move(sims)});
        }
    }

    for (const auto& entry : class_sims)
        g.add_arc(entry.node, entry.user,
                  aggregate_arc_weight(entry.sims, n_max_class, params.epsilon));
    for (const auto& entry : attr_sims)
        g.add_arc(entry.node, entry.user,
                  aggregate_arc_weight(entry.sims, n_max_attr, params.epsilon));
    return g;
}

DistanceTable::DistanceTable(std::vector<std::string> users, std::vector<double> distances)
    : users_(std::move(users)), distances_(std::move(distances)) {
    if (distances_.size() != users_.size() * users_.size())
        throw DomainError("distance table: matrix size mismatch");
}

double DistanceTable::between(std::string_view u, std::string_view v) const {
    auto index_of = [&](std::string_view id) {
        for (std::size_t i = 0; i < users_.size(); ++i)
            if (users_[i] == id)
                return i;
        throw DomainError("distance table: unknown user '" + std::string(id) + "'");
    };
    return at(index_of(u), index_of(v));
}

namespace {

std::string format_distance(double d) {
    if (std::isinf(d))
        return "inf";
    char buf[64];
    // shortest fixed-notation form that parses back to the same double
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d, std::chars_format::fixed);
    return std::string(buf, end);
}

double parse_distance(std::string_view field) {
    if (field == "inf")
        return std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError("distance table: bad value '" + std::string(field) + "'");
    return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

} // namespace

std::string DistanceTable::to_csv() const {
    std::ostringstream out;
    out << "user";
    for (const auto& u : users_)
        out << ',' << u;
    out << '\n';
    for (std::size_t i = 0; i < users_.size(); ++i) {
        out << users_[i];
        for (std::size_t j = 0; j < users_.size(); ++j)
            out << ',' << format_distance(at(i, j));
        out << '\n';
    }
    return out.str();
}

DistanceTable DistanceTable::from_csv(std::string_view csv) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < csv.size()) {
        std::size_t nl = csv.find('\n', start);
        if (nl == std::string_view::npos)
            nl = csv.size();
        if (nl > start)
            lines.emplace_back(csv.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty())
        throw ParseError("distance table: empty document");
    auto header = split_csv_line(lines[0]);
    if (header.empty() || header[0] != "user")
        throw ParseError("distance table: header must start with 'user'");
    std::vector<std::string> users(header.begin() + 1, header.end());
    const std::size_t n = users.size();
    if (lines.size() != n + 1)
        throw ParseError("distance table: expected " + std::to_string(n) + " rows");
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto fields = split_csv_line(lines[i + 1]);
        if (fields.size() != n + 1 || fields[0] != users[i])
            throw ParseError("distance table: malformed row for user '" + users[i] + "'");
        for (std::size_t j = 0; j < n; ++j)
            dist[i * n + j] = parse_distance(fields[j + 1]);
    }
    return DistanceTable(std::move(users), std::move(dist));
}

DistanceTable all_pairs_user_distances(const WeightedGraph& g0) {
    const std::size_t n = g0.nodes().size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, inf);
    for (std::size_t i = 0; i < n; ++i) {
        d[i * n + i] = 0.0;
        for (const auto& [j, w] : g0.neighbors(i))
            d[i * n + j] = w;
    }
    // pivot relaxation over every node; the recurrence is order-dependent in
    // the pivot, so the i-loop stays outermost
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dji = d[j * n + i];
            if (std::isinf(dji))
                continue;
            const double* row_i = &d[i * n];
            double* row_j = &d[j * n];
            for (std::size_t k = 0; k < n; ++k) {
                double through = dji + row_i[k];
                if (through < row_j[k])
                    row_j[k] = through;
            }
        }
    }

    std::vector<std::string> users;
    std::vector<std::size_t> user_idx;
    for (std::size_t i = 0; i < n; ++i)
        if (g0.nodes()[i].kind == NodeKind::User) {
            users.push_back(g0.nodes()[i].id);
            user_idx.push_back(i);
        }
    const std::size_t m = users.size();
    std::vector<double> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            table[a * m + b] = d[user_idx[a] * n + user_idx[b]];
    return DistanceTable(std::move(users), std::move(table));
}

} // namespace ontoclust

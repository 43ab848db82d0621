#pragma once

// Brute-force reference implementations used only to cross-check library
// results. Deliberately naive: nested loops, quadratic dedup, recursion.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace oracles {

// substring containment at or after a start offset, without std::string::find
inline bool contains_from(const std::string& hay, const std::string& needle, std::size_t from) {
    if (needle.size() > hay.size())
        return false;
    for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
        bool ok = true;
        for (std::size_t k = 0; k < needle.size(); ++k)
            if (hay[i + k] != needle[k]) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    }
    return false;
}

inline bool contains(const std::string& hay, const std::string& needle) {
    return contains_from(hay, needle, 0);
}

// fraction of a's distinct proper substrings found in b at or after the
// position they hold in a (lower-case inputs)
inline double substring_similarity(const std::string& a, const std::string& b) {
    if (a.size() == 1)
        return contains(b, a) ? 1.0 : 0.0;
    std::vector<std::pair<std::string, std::size_t>> subs; // substring, anchor
    for (std::size_t len = 1; len < a.size(); ++len)
        for (std::size_t i = 0; i + len <= a.size(); ++i) {
            std::string s = a.substr(i, len);
            bool dup = false;
            for (const auto& t : subs)
                if (t.first == s) {
                    dup = true;
                    break;
                }
            if (!dup)
                subs.emplace_back(std::move(s), i);
        }
    std::size_t hits = 0;
    for (const auto& [s, anchor] : subs)
        if (contains_from(b, s, anchor))
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(subs.size());
}

// memoized recursive Levenshtein
inline int levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::vector<int>> memo(a.size() + 1, std::vector<int>(b.size() + 1, -1));
    std::function<int(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> int {
        if (i == a.size())
            return static_cast<int>(b.size() - j);
        if (j == b.size())
            return static_cast<int>(a.size() - i);
        int& slot = memo[i][j];
        if (slot >= 0)
            return slot;
        int best = go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
        best = std::min(best, go(i + 1, j) + 1);
        best = std::min(best, go(i, j + 1) + 1);
        return slot = best;
    };
    return go(0, 0);
}

// best attribute-run score: for every contiguous word run that can be placed
// at increasing positions (greedy earliest placement), score
// (words/total_words) * (chars/total_chars) and take the maximum
inline double attribute_similarity(const std::string& request_lower,
                                   const std::vector<std::string>& words_lower) {
    if (words_lower.empty())
        return 0.0;
    std::size_t chars_total = 0;
    for (const auto& w : words_lower)
        chars_total += w.size();
    auto run_matches = [&](std::size_t s, std::size_t e) {
        std::size_t pos = 0;
        for (std::size_t k = s; k <= e; ++k) {
            std::size_t p = request_lower.find(words_lower[k], pos);
            if (p == std::string::npos)
                return false;
            pos = p + words_lower[k].size();
        }
        return true;
    };
    double best = 0.0;
    for (std::size_t s = 0; s < words_lower.size(); ++s)
        for (std::size_t e = s; e < words_lower.size(); ++e) {
            if (!run_matches(s, e))
                break;
            std::size_t chars = 0;
            for (std::size_t k = s; k <= e; ++k)
                chars += words_lower[k].size();
            double score = (static_cast<double>(e - s + 1) / static_cast<double>(words_lower.size())) *
                           (static_cast<double>(chars) / static_cast<double>(chars_total));
            best = std::max(best, score);
        }
    return best;
}

// shortest path by enumerating every simple path (tiny graphs only);
// weights[i][j] == infinity encodes a missing arc
inline double exhaustive_shortest_path(const std::vector<std::vector<double>>& weights,
                                       std::size_t source, std::size_t target) {
    const double inf = std::numeric_limits<double>::infinity();
    if (source == target)
        return 0.0;
    const std::size_t n = weights.size();
    std::vector<char> used(n, 0);
    double best = inf;
    std::function<void(std::size_t, double)> walk = [&](std::size_t u, double acc) {
        if (u == target) {
            best = std::min(best, acc);
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (used[v] || std::isinf(weights[u][v]))
                continue;
            used[v] = 1;
            walk(v, acc + weights[u][v]);
            used[v] = 0;
        }
    };
    used[source] = 1;
    walk(source, 0.0);
    return best;
}

// binary-heap Dijkstra over an adjacency list
inline std::vector<double> dijkstra(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                                    std::size_t source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(adj.size(), inf);
    dist[source] = 0.0;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u])
            continue;
        for (const auto& [v, w] : adj[u])
            if (dist[u] + w < dist[v]) {
                dist[v] = dist[u] + w;
                heap.push({dist[v], v});
            }
    }
    return dist;
}

// tiny union-find, used for partition/replay and component checks
struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i)
            parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace oracles

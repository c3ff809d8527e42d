#include "cvibench/hierclust.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "cvibench/error.hpp"

namespace cvibench {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Working state indexed by slot; a merged cluster reuses its left slot.
struct Agglomerator {
    std::size_t n;
    std::vector<double> dist;       // n x n, symmetric
    std::vector<std::size_t> id;    // node id per slot
    std::vector<std::size_t> size;  // member count per slot
    std::vector<bool> active;
    std::vector<std::size_t> nn;    // best partner among slots with a larger node id
    std::vector<double> nn_dist;

    double& at(std::size_t a, std::size_t b) { return dist[a * n + b]; }

    // (distance, partner id) ordering restricted to partners with larger ids.
    void refresh(std::size_t a) {
        nn[a] = kNone;
        nn_dist[a] = kInf;
        for (std::size_t b = 0; b < n; ++b) {
            if (!active[b] || b == a || id[b] < id[a]) continue;
            const double v = at(a, b);
            if (v < nn_dist[a] || (v == nn_dist[a] && nn[a] != kNone && id[b] < id[nn[a]])) {
                nn[a] = b;
                nn_dist[a] = v;
            }
        }
    }
};

}  // namespace

Dendrogram upgma(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    if (n < 2) throw ConfigError("upgma: need at least two objects");

    Agglomerator g{n, std::vector<double>(n * n, 0.0), {}, std::vector<std::size_t>(n, 1),
                   std::vector<bool>(n, true), std::vector<std::size_t>(n, kNone),
                   std::vector<double>(n, kInf)};
    g.id.resize(n);
    std::iota(g.id.begin(), g.id.end(), std::size_t{1});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.at(i, j) = g.at(j, i) = d(i, j);
    for (std::size_t i = 0; i < n; ++i) g.refresh(i);

    Dendrogram tree;
    tree.n = n;
    tree.merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Global minimum of (distance, smaller id, larger id); nn[] only looks
        // upward in id, so the smaller id of the pair is the slot itself.
        std::size_t a = kNone;
        for (std::size_t s = 0; s < n; ++s) {
            if (!g.active[s] || g.nn[s] == kNone) continue;
            if (a == kNone || g.nn_dist[s] < g.nn_dist[a] ||
                (g.nn_dist[s] == g.nn_dist[a] &&
                 (g.id[s] < g.id[a] || (g.id[s] == g.id[a] && g.id[g.nn[s]] < g.id[g.nn[a]]))))
                a = s;
        }
        const std::size_t b = g.nn[a];
        const double height = g.nn_dist[a];
        const std::size_t sa = g.size[a];
        const std::size_t sb = g.size[b];

        tree.merges.push_back({g.id[a], g.id[b], height, sa + sb});

        const double wa = static_cast<double>(sa);
        const double wb = static_cast<double>(sb);
        for (std::size_t c = 0; c < n; ++c) {
            if (!g.active[c] || c == a || c == b) continue;
            const double merged = (wa * g.at(a, c) + wb * g.at(b, c)) / (wa + wb);
            g.at(a, c) = g.at(c, a) = merged;
        }
        g.active[b] = false;
        g.id[a] = n + 1 + step;
        g.size[a] = sa + sb;

        // The new node has the largest id: it is a candidate for everyone
        // else and has no candidates of its own.
        g.nn[a] = kNone;
        g.nn_dist[a] = kInf;
        for (std::size_t c = 0; c < n; ++c) {
            if (!g.active[c] || c == a) continue;
            if (g.nn[c] == a || g.nn[c] == b) {
                g.refresh(c);
            } else if (g.at(c, a) < g.nn_dist[c]) {
                g.nn[c] = a;
                g.nn_dist[c] = g.at(c, a);
            }
        }
    }
    return tree;
}

Partition cut_k(const Dendrogram& tree, std::size_t k) {
    const std::size_t n = tree.n;
    if (k < 1 || k > n)
        throw ConfigError("cut_k: k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
    // Replay the first n-k merges with union-find over node ids.
    std::vector<std::size_t> parent(2 * n, 0);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t t = 0; t < n - k; ++t) {
        const std::size_t node = n + 1 + t;
        parent[find(tree.merges[t].left)] = node;
        parent[find(tree.merges[t].right)] = node;
    }
    std::vector<long long> roots(n);
    for (std::size_t i = 0; i < n; ++i) roots[i] = static_cast<long long>(find(i + 1));
    return Partition::from_ids(roots);
}

PartitionSet cut_range(const Dendrogram& tree, std::size_t k_min, std::size_t k_max) {
    if (k_min < 2 || k_min > k_max || k_max > tree.n)
        throw ConfigError("cut_range: need 2 <= k_min <= k_max <= n (got " + std::to_string(k_min) +
                          ".." + std::to_string(k_max) + ", n=" + std::to_string(tree.n) + ")");
    PartitionSet set;
    for (std::size_t k = k_min; k <= k_max; ++k) set.add(cut_k(tree, k), "upgma");
    return set;
}

void check_dendrogram(const Dendrogram& tree) {
    const std::size_t n = tree.n;
    if (tree.merges.size() + 1 != n) throw std::logic_error("dendrogram: expected n-1 merges");
    std::vector<std::size_t> size(2 * n, 0);
    std::vector<bool> used(2 * n, false);
    for (std::size_t i = 1; i <= n; ++i) size[i] = 1;
    for (std::size_t t = 0; t < tree.merges.size(); ++t) {
        const auto& m = tree.merges[t];
        const std::size_t node = n + 1 + t;
        for (std::size_t child : {m.left, m.right}) {
            if (child < 1 || child >= node || used[child]) throw std::logic_error("dendrogram: bad child");
            used[child] = true;
        }
        if (m.size != size[m.left] + size[m.right]) throw std::logic_error("dendrogram: size mismatch");
        size[node] = m.size;
        if (t > 0 && m.height < tree.merges[t - 1].height - 1e-12)
            throw std::logic_error("dendrogram: heights decrease at merge " + std::to_string(t));
    }
    if (size[tree.root()] != n) throw std::logic_error("dendrogram: root does not cover all leaves");
}

std::string dendrogram_to_json(const Dendrogram& tree) {
    nlohmann::ordered_json j;
    j["n"] = tree.n;
    auto& merges = j["merges"] = nlohmann::ordered_json::array();
    for (const auto& m : tree.merges)
        merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
    return j.dump(2) + "\n";
}

}  // namespace cvibench

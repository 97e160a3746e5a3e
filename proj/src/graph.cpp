#include "rydopt/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rydopt/rng.hpp"

namespace rydopt {

std::string cost_kind_name(CostKind kind) { return kind == CostKind::Mis ? "mis" : "maxcut"; }

CostKind cost_kind_from_name(const std::string& name) {
    if (name == "mis") return CostKind::Mis;
    if (name == "maxcut") return CostKind::MaxCut;
    throw std::invalid_argument("unknown problem kind: " + name);
}

double Graph::density() const {
    if (n < 2) return 0.0;
    return 2.0 * static_cast<double>(edges.size()) / (static_cast<double>(n) * (n - 1));
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n, 0);
    for (const auto& [i, j] : edges) {
        ++deg[i];
        ++deg[j];
    }
    return deg;
}

std::vector<std::uint64_t> Graph::adjacency_masks() const {
    if (n > 64) throw std::invalid_argument("adjacency_masks: graph order exceeds 64");
    std::vector<std::uint64_t> adj(n, 0);
    for (const auto& [i, j] : edges) {
        adj[i] |= 1ULL << j;
        adj[j] |= 1ULL << i;
    }
    return adj;
}

bool Graph::has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw std::invalid_argument("graph order must be nonnegative");
    for (auto& [i, j] : edges) {
        if (i > j) std::swap(i, j);
        if (i == j) throw std::invalid_argument("self-loop in edge list");
        if (i < 0 || j >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph{n, std::move(edges)};
}

Graph gen_erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_erdos_renyi: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_erdos_renyi: p must be in [0,1]");

    std::vector<std::pair<int, int>> edges;
    if (p >= 1.0) {
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) edges.emplace_back(i, j);
        return Graph{n, std::move(edges)};
    }
    if (p <= 0.0) return Graph{n, {}};

    // Geometric skip sampling; cost is O(|E|) rather than O(n^2).
    Rng rng(seed);
    const double log1mp = std::log1p(-p);
    long long v = 1;
    long long w = -1;
    while (v < n) {
        const double r = rng.uniform();
        w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log1mp));
        while (w >= v && v < n) {
            w -= v;
            ++v;
        }
        if (v < n) edges.emplace_back(static_cast<int>(w), static_cast<int>(v));
    }
    std::sort(edges.begin(), edges.end());
    return Graph{n, std::move(edges)};
}

Graph unit_disk_graph(const std::vector<Vec2>& positions, double radius) {
    const int n = static_cast<int>(positions.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (distance(positions[i], positions[j]) <= radius) edges.emplace_back(i, j);
    return Graph{n, std::move(edges)};
}

UnitDiskSample gen_unit_disk(int n, double radius, double box, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_unit_disk: n must be >= 1");
    if (radius <= 0.0 || box <= 0.0) throw std::invalid_argument("gen_unit_disk: radius and box must be positive");
    Rng rng(seed);
    std::vector<Vec2> pos(n);
    for (auto& p : pos) {
        p.x = rng.uniform(0.0, box);
        p.y = rng.uniform(0.0, box);
    }
    Graph g = unit_disk_graph(pos, radius);
    return UnitDiskSample{std::move(g), std::move(pos)};
}

std::string bitstring_to_string(const Bitstring& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) s[i] = '1';
    return s;
}

Bitstring bitstring_from_string(const std::string& s) {
    Bitstring bits(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bitstring: invalid character");
        bits[i] = s[i] == '1';
    }
    return bits;
}

Bitstring bitstring_from_mask(std::uint64_t mask, int n) {
    Bitstring bits(n, 0);
    for (int i = 0; i < n; ++i) bits[i] = (mask >> i) & 1ULL;
    return bits;
}

long long qubo_cost(const Graph& g, const Bitstring& x, CostKind kind) {
    if (static_cast<int>(x.size()) != g.n)
        throw std::invalid_argument("qubo_cost: assignment length does not match graph order");
    long long linear = 0;
    long long quad = 0;
    for (const auto& [i, j] : g.edges) quad += static_cast<long long>(x[i]) * x[j];
    if (kind == CostKind::Mis) {
        for (int i = 0; i < g.n; ++i) linear += x[i];
        return -linear + quad;
    }
    const auto deg = g.degrees();
    for (int i = 0; i < g.n; ++i) linear += static_cast<long long>(deg[i]) * x[i];
    return -linear + 2 * quad;
}

long long qubo_cost_mask(const Graph& g, std::uint64_t mask, CostKind kind) {
    return qubo_cost(g, bitstring_from_mask(mask, g.n), kind);
}

namespace {

struct BnbState {
    const Graph* g = nullptr;
    CostKind kind;
    std::vector<std::uint64_t> adj;
    std::vector<int> deg;
    Bitstring current;
    Bitstring best;
    long long best_cost = std::numeric_limits<long long>::max();
    std::vector<int> undecided_edges_after;  // edges with an endpoint >= i
};

// DFS over vertices in index order trying 0 before 1: the first strict
// improvement found is the lexicographically smallest optimum.
void bnb(BnbState& s, int i, long long partial, std::uint64_t ones_mask) {
    const int n = s.g->n;
    if (i == n) {
        if (partial < s.best_cost) {
            s.best_cost = partial;
            s.best = s.current;
        }
        return;
    }
    // Lower bound on what the remaining vertices can still subtract.
    long long slack = 0;
    if (s.kind == CostKind::Mis) {
        slack = n - i;  // each remaining vertex adds at least -1
    } else {
        slack = s.undecided_edges_after[i];  // each unresolved edge adds at least -1
    }
    if (partial - slack >= s.best_cost) return;

    for (int bit = 0; bit <= 1; ++bit) {
        long long delta = 0;
        if (bit == 1) {
            const int earlier_ones = std::popcount(s.adj[i] & ones_mask);
            if (s.kind == CostKind::Mis) {
                delta = -1 + earlier_ones;
            } else {
                delta = -s.deg[i] + 2 * earlier_ones;
            }
        }
        s.current[i] = static_cast<std::uint8_t>(bit);
        bnb(s, i + 1, partial + delta, bit ? (ones_mask | (1ULL << i)) : ones_mask);
    }
    s.current[i] = 0;
}

}  // namespace

ExactSolution exact_solve(const Graph& g, CostKind kind, int max_n) {
    if (g.n > max_n) throw std::invalid_argument("exact_solve: graph order exceeds the exact-solver limit");
    if (g.n == 0) return ExactSolution{{}, 0};

    BnbState s;
    s.g = &g;
    s.kind = kind;
    s.adj = g.adjacency_masks();
    s.deg = g.degrees();
    s.current.assign(g.n, 0);
    s.undecided_edges_after.assign(g.n + 1, 0);
    for (const auto& e : g.edges) {
        // edge is unresolved until its larger endpoint is assigned
        for (int i = 0; i <= std::max(e.first, e.second); ++i) ++s.undecided_edges_after[i];
    }
    bnb(s, 0, 0, 0);
    return ExactSolution{std::move(s.best), s.best_cost};
}

double random_baseline(const Graph& g, CostKind kind, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("random_baseline: trials must be >= 1");
    Rng rng(seed);
    Bitstring x(g.n, 0);
    long long total = 0;
    for (int t = 0; t < trials; ++t) {
        for (int i = 0; i < g.n; ++i) x[i] = static_cast<std::uint8_t>(rng.next_u64() >> 63);
        total += qubo_cost(g, x, kind);
    }
    return static_cast<double>(total) / trials;
}

const std::array<const char*, kNumGraphFeatures> kGraphFeatureNames = {
    "order",         "size",          "density",       "min_neighborhood", "max_neighborhood",
    "avg_neighborhood", "min_connected_dist", "max_connected_dist", "avg_connected_dist",
    "min_disjoint_dist", "max_disjoint_dist", "avg_disjoint_dist", "n_pulse_points"};

std::array<double, kNumGraphFeatures> graph_features(const Graph& g, const Register& reg,
                                                     int n_pulse_points) {
    if (reg.size() != g.n) throw std::invalid_argument("graph_features: register does not match graph order");

    std::array<double, kNumGraphFeatures> f{};
    f[0] = g.n;
    f[1] = g.size();
    f[2] = g.density();

    const auto deg = g.degrees();
    double dmin = g.n > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    double dmax = 0.0, dsum = 0.0;
    for (int d : deg) {
        dmin = std::min(dmin, static_cast<double>(d));
        dmax = std::max(dmax, static_cast<double>(d));
        dsum += d;
    }
    f[3] = g.n > 0 ? dmin : 0.0;
    f[4] = dmax;
    f[5] = g.n > 0 ? dsum / g.n : 0.0;

    auto pair_stats = [&](bool connected, int base) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0, sum = 0.0;
        long long count = 0;
        for (int i = 0; i < g.n; ++i) {
            for (int j = i + 1; j < g.n; ++j) {
                if (g.has_edge(i, j) != connected) continue;
                const double d = distance(reg.positions_um[i], reg.positions_um[j]);
                lo = std::min(lo, d);
                hi = std::max(hi, d);
                sum += d;
                ++count;
            }
        }
        if (count == 0) {
            f[base] = f[base + 1] = f[base + 2] = 0.0;  // degenerate triple encodes as 0
        } else {
            f[base] = lo;
            f[base + 1] = hi;
            f[base + 2] = sum / static_cast<double>(count);
        }
    };
    pair_stats(true, 6);
    pair_stats(false, 9);

    f[12] = n_pulse_points;
    return f;
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [i, j] : g.edges) edges.push_back({i, j});
    return nlohmann::json{{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return make_graph(j.at("n").get<int>(), std::move(edges));
}

}  // namespace rydopt

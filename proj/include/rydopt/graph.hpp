#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rydopt/register.hpp"

namespace rydopt {

enum class CostKind { Mis, MaxCut };

std::string cost_kind_name(CostKind kind);
CostKind cost_kind_from_name(const std::string& name);

// Undirected simple graph on vertices 0..n-1. Edges are stored sorted with
// i < j and deduplicated, so serialization is deterministic.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int size() const { return static_cast<int>(edges.size()); }
    double density() const;
    std::vector<int> degrees() const;
    std::vector<std::uint64_t> adjacency_masks() const;  // requires n <= 64
    bool has_edge(int i, int j) const;
};

// Normalizes (sorts, dedups) and validates the edge list.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

Graph gen_erdos_renyi(int n, double p, std::uint64_t seed);

Graph unit_disk_graph(const std::vector<Vec2>& positions, double radius);

struct UnitDiskSample {
    Graph graph;
    std::vector<Vec2> positions;
};
UnitDiskSample gen_unit_disk(int n, double radius, double box, std::uint64_t seed);

using Bitstring = std::vector<std::uint8_t>;

std::string bitstring_to_string(const Bitstring& bits);
Bitstring bitstring_from_string(const std::string& s);
Bitstring bitstring_from_mask(std::uint64_t mask, int n);

// QUBO cost of an assignment. MIS: -sum x_i + sum_E x_i x_j. MaxCut:
// -sum_i N(i) x_i + 2 sum_E x_i x_j, which equals minus the cut size.
long long qubo_cost(const Graph& g, const Bitstring& x, CostKind kind);
long long qubo_cost_mask(const Graph& g, std::uint64_t mask, CostKind kind);

struct ExactSolution {
    Bitstring bits;
    long long cost = 0;
};

// Branch-and-bound global minimizer of qubo_cost; ties resolve to the
// lexicographically smallest bitstring. Throws if g.n exceeds max_n.
ExactSolution exact_solve(const Graph& g, CostKind kind, int max_n = 20);

// Mean qubo_cost over uniformly random assignments.
double random_baseline(const Graph& g, CostKind kind, int trials, std::uint64_t seed);
inline constexpr int kDefaultRandomBaselineTrials = 1000;

// Fixed 13-feature description of a (graph, register) pair:
// order, size, density, min/max/avg neighborhood size, min/max/avg distance
// between connected pairs, min/max/avg distance between non-adjacent pairs,
// number of pulse points. Degenerate statistics (no connected or no
// disjoint pairs) encode as 0.
inline constexpr int kNumGraphFeatures = 13;
std::array<double, kNumGraphFeatures> graph_features(const Graph& g, const Register& reg,
                                                     int n_pulse_points);
extern const std::array<const char*, kNumGraphFeatures> kGraphFeatureNames;

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace rydopt

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rydopt/graph.hpp"
#include "rydopt/register.hpp"

namespace rydopt::testing {

// 3x3 square lattice, vertices row-major; its unique MIS is the four
// corners plus the center, {0, 2, 4, 6, 8}.
inline Graph grid3x3() {
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const int v = r * 3 + c;
            if (c + 1 < 3) edges.emplace_back(v, v + 1);
            if (r + 1 < 3) edges.emplace_back(v, v + 3);
        }
    }
    return make_graph(9, std::move(edges));
}

inline Register grid3x3_register(double spacing_um) {
    Register reg;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) reg.positions_um.push_back({c * spacing_um, r * spacing_um});
    return reg;
}

// Seven-vertex instance whose unique MIS is the outer triple {3, 4, 5}:
// an inner triangle {0, 1, 2}, a hub 6 adjacent to everything, and each
// outer vertex tied to two inner ones. Matches the vertex roles of the
// concentric-triangle register template.
inline Graph hard_graph() {
    return make_graph(7, {{0, 1}, {1, 2}, {0, 2},            // inner triangle
                          {0, 6}, {1, 6}, {2, 6},            // hub to inner
                          {3, 6}, {4, 6}, {5, 6},            // hub to outer
                          {0, 3}, {1, 3}, {1, 4}, {2, 4}, {0, 5}, {2, 5}});
}

// Exhaustive minimizer used as the independent oracle for exact_solve:
// scans all 2^n assignments, breaking ties toward the lexicographically
// smallest bit vector.
inline ExactSolution enumerate_solve(const Graph& g, CostKind kind) {
    ExactSolution best;
    bool first = true;
    for (std::uint64_t mask = 0; mask < (1ULL << g.n); ++mask) {
        Bitstring bits = bitstring_from_mask(mask, g.n);
        const long long cost = qubo_cost(g, bits, kind);
        if (first || cost < best.cost ||
            (cost == best.cost && std::lexicographical_compare(bits.begin(), bits.end(),
                                                               best.bits.begin(), best.bits.end()))) {
            best.bits = bits;
            best.cost = cost;
            first = false;
        }
    }
    return best;
}

// Direct cut count from the definition sum_E (x_i - x_j)^2.
inline long long cut_size(const Graph& g, const Bitstring& x) {
    long long cut = 0;
    for (const auto& [i, j] : g.edges) {
        const int d = static_cast<int>(x[i]) - static_cast<int>(x[j]);
        cut += static_cast<long long>(d) * d;
    }
    return cut;
}

}  // namespace rydopt::testing

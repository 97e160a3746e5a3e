#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rydopt/embedding.hpp"
#include "rydopt/emulator.hpp"
#include "rydopt/gbr.hpp"
#include "rydopt/graph.hpp"
#include "rydopt/noise.hpp"
#include "rydopt/pulse.hpp"

namespace rydopt {

enum class ObjectiveKind { AverageCost, BestCost, WorstCost };

std::string objective_kind_name(ObjectiveKind kind);
ObjectiveKind objective_kind_from_name(const std::string& name);

// Sampled-cost objective of a measurement record: the count-weighted mean
// cost, the best sampled cost or the worst sampled cost.
double objective_value(const SampleSet& samples, const Graph& g, CostKind kind, ObjectiveKind obj);

struct OptBudget {
    int random_starts = 0;
    int total_calls = 0;
    int shots_per_eval = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

// Paper-style budget: 10n random starts, 50n total calls.
OptBudget default_budget(int n_atoms, std::uint64_t seed, int shots_per_eval = 200);

struct TraceStep {
    std::vector<double> params;
    double objective = 0.0;
    long long best_cost_so_far = 0;
};
using OptTrace = std::vector<TraceStep>;

// Sequential model-based minimization: Latin-hypercube starts, then a
// bagged gradient-boosted-tree surrogate scored by a lower confidence bound
// over a fresh uniform candidate pool each iteration.
struct SmboOptions {
    int random_starts = 10;
    int total_calls = 30;
    std::uint64_t seed = 0;
    double kappa = 1.96;
    int candidate_pool = 1000;
    int bootstrap_ensembles = 5;
    GbrHyper surrogate{};
};

struct SmboResult {
    std::vector<double> best_params;
    double best_objective = 0.0;
    std::vector<std::pair<std::vector<double>, double>> evaluations;
};

SmboResult smbo_minimize(const std::function<double(std::span<const double>)>& objective,
                         std::span<const std::pair<double, double>> bounds, const SmboOptions& opts);

struct ShapeResult {
    Pulse pulse;
    OptTrace trace;
    double best_objective = 0.0;
    long long best_cost = 0;  // best sampled solution cost over the whole run
    Bitstring best_bits;
};

// Closed-loop pulse optimization against the emulator. Per-evaluation
// sampling uses the substream derive_seed(budget.seed, {stream::sampler,
// call_index}); noisy evaluations split the shot budget over five
// realizations.
ShapeResult shape_pulse(const Graph& g, const Register& reg, CostKind kind, const OptBudget& budget,
                        const NoiseParams& noise = NoiseParams::off(),
                        ObjectiveKind obj = ObjectiveKind::AverageCost,
                        const PulseBounds& bounds = {}, const EmulatorConfig& cfg = {});

struct EmbeddingShapeResult {
    Register reg;
    Pulse pulse;
    std::vector<double> embedding_params;
    OptTrace outer_trace;
    double best_objective = 0.0;
    long long best_cost = 0;
};

// Outer surrogate search over the template parameters; each outer call runs
// a full inner shape_pulse with budget seed derive_seed(budget.seed,
// {stream::optimizer, 0x454d, outer_call}). Infeasible registers score the
// penalty objective 0.
EmbeddingShapeResult shape_with_embedding(const Graph& g, const RegisterTemplate& tmpl,
                                          CostKind kind, int outer_steps,
                                          const OptBudget& inner_budget,
                                          const NoiseParams& noise = NoiseParams::off(),
                                          ObjectiveKind obj = ObjectiveKind::AverageCost,
                                          const PulseBounds& bounds = {},
                                          const EmulatorConfig& cfg = {});

struct Candidate {
    Register reg;
    Pulse pulse;
};

struct SelectionResult {
    int index = -1;
    Register reg;
    Pulse pulse;
    Bitstring best_bits;
    long long best_cost = 0;
    std::vector<long long> per_candidate_best;
};

// Samples every candidate (substream derive_seed(seed, {stream::sampler,
// candidate_index})) and keeps the one whose best sampled bitstring has the
// lowest cost; ties resolve to the earliest candidate, then to the
// lexicographically smallest bitstring.
SelectionResult select_best(const Graph& g, CostKind kind, std::span<const Candidate> candidates,
                            int shots = 1000, const NoiseParams& noise = NoiseParams::off(),
                            std::uint64_t seed = 0, const EmulatorConfig& cfg = {});

}  // namespace rydopt

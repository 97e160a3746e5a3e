#include "rydopt/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rydopt/rng.hpp"

namespace rydopt {

std::string objective_kind_name(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::AverageCost: return "average";
        case ObjectiveKind::BestCost: return "best";
        case ObjectiveKind::WorstCost: return "worst";
    }
    return "average";
}

ObjectiveKind objective_kind_from_name(const std::string& name) {
    if (name == "average") return ObjectiveKind::AverageCost;
    if (name == "best") return ObjectiveKind::BestCost;
    if (name == "worst") return ObjectiveKind::WorstCost;
    throw std::invalid_argument("unknown objective kind: " + name);
}

double objective_value(const SampleSet& samples, const Graph& g, CostKind kind, ObjectiveKind obj) {
    if (samples.total <= 0 || samples.counts.empty())
        throw std::invalid_argument("objective_value: empty sample set");
    double weighted = 0.0;
    long long best = std::numeric_limits<long long>::max();
    long long worst = std::numeric_limits<long long>::min();
    for (const auto& [bits, count] : samples.counts) {
        const long long cost = qubo_cost(g, bitstring_from_string(bits), kind);
        weighted += static_cast<double>(cost) * static_cast<double>(count);
        best = std::min(best, cost);
        worst = std::max(worst, cost);
    }
    switch (obj) {
        case ObjectiveKind::AverageCost: return weighted / static_cast<double>(samples.total);
        case ObjectiveKind::BestCost: return static_cast<double>(best);
        case ObjectiveKind::WorstCost: return static_cast<double>(worst);
    }
    return 0.0;
}

void OptBudget::validate() const {
    if (random_starts < 1 || total_calls < random_starts)
        throw std::invalid_argument("budget: need total_calls >= random_starts >= 1");
    if (shots_per_eval < 1) throw std::invalid_argument("budget: shots_per_eval must be >= 1");
}

OptBudget default_budget(int n_atoms, std::uint64_t seed, int shots_per_eval) {
    OptBudget b;
    b.random_starts = 10 * n_atoms;
    b.total_calls = 50 * n_atoms;
    b.shots_per_eval = shots_per_eval;
    b.seed = seed;
    return b;
}

namespace {

std::vector<std::vector<double>> latin_hypercube(std::span<const std::pair<double, double>> bounds,
                                                 int count, Rng& rng) {
    const int dims = static_cast<int>(bounds.size());
    std::vector<std::vector<double>> points(count, std::vector<double>(dims));
    for (int d = 0; d < dims; ++d) {
        std::vector<int> strata(count);
        std::iota(strata.begin(), strata.end(), 0);
        for (int i = count - 1; i > 0; --i)
            std::swap(strata[i], strata[rng.uniform_int(static_cast<std::uint64_t>(i) + 1)]);
        const double width = (bounds[d].second - bounds[d].first) / count;
        for (int i = 0; i < count; ++i)
            points[i][d] = bounds[d].first + (strata[i] + rng.uniform()) * width;
    }
    return points;
}

std::vector<double> uniform_point(std::span<const std::pair<double, double>> bounds, Rng& rng) {
    std::vector<double> x(bounds.size());
    for (std::size_t d = 0; d < bounds.size(); ++d) x[d] = rng.uniform(bounds[d].first, bounds[d].second);
    return x;
}

}  // namespace

SmboResult smbo_minimize(const std::function<double(std::span<const double>)>& objective,
                         std::span<const std::pair<double, double>> bounds, const SmboOptions& opts) {
    if (bounds.empty()) throw std::invalid_argument("smbo_minimize: empty parameter box");
    if (opts.random_starts < 1 || opts.total_calls < opts.random_starts)
        throw std::invalid_argument("smbo_minimize: need total_calls >= random_starts >= 1");

    Rng rng(derive_seed(opts.seed, {stream::optimizer}));
    SmboResult result;
    result.best_objective = std::numeric_limits<double>::infinity();

    auto record = [&](std::vector<double> x) {
        const double value = objective(x);
        if (value < result.best_objective) {
            result.best_objective = value;
            result.best_params = x;
        }
        result.evaluations.emplace_back(std::move(x), value);
    };

    for (auto& x : latin_hypercube(bounds, opts.random_starts, rng)) record(std::move(x));

    FeatureMatrix observed_x;
    std::vector<double> observed_y;
    while (static_cast<int>(result.evaluations.size()) < opts.total_calls) {
        observed_x.clear();
        observed_y.clear();
        for (const auto& [x, y] : result.evaluations) {
            observed_x.push_back(x);
            observed_y.push_back(y);
        }
        const bool degenerate =
            std::all_of(observed_y.begin(), observed_y.end(),
                        [&](double v) { return v == observed_y.front(); });
        if (degenerate) {
            record(uniform_point(bounds, rng));  // no signal yet: keep exploring
            continue;
        }

        // Bagged surrogate: the spread over bootstrap refits stands in for
        // model uncertainty in the lower confidence bound.
        std::vector<TreeEnsemble> ensembles;
        ensembles.reserve(opts.bootstrap_ensembles);
        const std::size_t t = observed_y.size();
        for (int b = 0; b < opts.bootstrap_ensembles; ++b) {
            FeatureMatrix bx;
            std::vector<double> by;
            bx.reserve(t);
            by.reserve(t);
            for (std::size_t i = 0; i < t; ++i) {
                const std::size_t pick = rng.uniform_int(t);
                bx.push_back(observed_x[pick]);
                by.push_back(observed_y[pick]);
            }
            ensembles.push_back(fit_gbr(bx, by, opts.surrogate));
        }

        std::vector<double> best_candidate;
        double best_lcb = std::numeric_limits<double>::infinity();
        for (int c = 0; c < opts.candidate_pool; ++c) {
            const auto candidate = uniform_point(bounds, rng);
            double mean = 0.0, sq = 0.0;
            for (const auto& m : ensembles) {
                const double p = m.predict(candidate);
                mean += p;
                sq += p * p;
            }
            mean /= ensembles.size();
            const double var = std::max(0.0, sq / ensembles.size() - mean * mean);
            const double lcb = mean - opts.kappa * std::sqrt(var);
            if (lcb < best_lcb) {
                best_lcb = lcb;
                best_candidate = candidate;
            }
        }
        record(std::move(best_candidate));
    }
    return result;
}

namespace {

struct EvalOutcome {
    double objective = 0.0;
    long long best_cost = 0;
    Bitstring best_bits;
};

EvalOutcome evaluate_pulse(const Graph& g, const Register& reg, const Pulse& pulse, CostKind kind,
                           ObjectiveKind obj, int shots, const NoiseParams& noise,
                           std::uint64_t eval_seed, const EmulatorConfig& cfg) {
    SampleSet samples;
    if (noise.enabled) {
        const int realizations = 5;
        const int per_real = std::max(1, (shots + realizations - 1) / realizations);
        samples = run_noisy(reg, pulse, noise, per_real, realizations, eval_seed, cfg);
    } else {
        const QuantumState state = evolve(reg, waveforms(pulse), trivial_realization(reg.size()), cfg);
        samples = sample(state, shots, derive_seed(eval_seed, {stream::sampler}));
    }

    EvalOutcome out;
    out.objective = objective_value(samples, g, kind, obj);
    out.best_cost = std::numeric_limits<long long>::max();
    for (const auto& [bits, count] : samples.counts) {
        const long long cost = qubo_cost(g, bitstring_from_string(bits), kind);
        if (cost < out.best_cost) {
            out.best_cost = cost;
            out.best_bits = bitstring_from_string(bits);
        }
    }
    return out;
}

}  // namespace

ShapeResult shape_pulse(const Graph& g, const Register& reg, CostKind kind, const OptBudget& budget,
                        const NoiseParams& noise, ObjectiveKind obj, const PulseBounds& bounds,
                        const EmulatorConfig& cfg) {
    budget.validate();
    if (reg.size() != g.n) throw std::invalid_argument("shape_pulse: register does not match graph");

    const auto box = pulse_param_box(bounds);
    ShapeResult result;
    result.best_cost = std::numeric_limits<long long>::max();

    int call_index = 0;
    auto wrapped = [&](std::span<const double> params) {
        const Pulse pulse = Pulse::from_params(params);
        const auto outcome =
            evaluate_pulse(g, reg, pulse, kind, obj, budget.shots_per_eval, noise,
                           derive_seed(budget.seed, {stream::sampler, static_cast<std::uint64_t>(call_index)}),
                           cfg);
        if (outcome.best_cost < result.best_cost) {
            result.best_cost = outcome.best_cost;
            result.best_bits = outcome.best_bits;
        }
        TraceStep step;
        step.params.assign(params.begin(), params.end());
        step.objective = outcome.objective;
        step.best_cost_so_far = result.best_cost;
        result.trace.push_back(std::move(step));
        ++call_index;
        return outcome.objective;
    };

    SmboOptions opts;
    opts.random_starts = budget.random_starts;
    opts.total_calls = budget.total_calls;
    opts.seed = budget.seed;
    const SmboResult smbo = smbo_minimize(wrapped, box, opts);

    result.pulse = Pulse::from_params(smbo.best_params);
    result.best_objective = smbo.best_objective;
    return result;
}

EmbeddingShapeResult shape_with_embedding(const Graph& g, const RegisterTemplate& tmpl, CostKind kind,
                                          int outer_steps, const OptBudget& inner_budget,
                                          const NoiseParams& noise, ObjectiveKind obj,
                                          const PulseBounds& bounds, const EmulatorConfig& cfg) {
    if (outer_steps < 1) throw std::invalid_argument("shape_with_embedding: outer_steps must be >= 1");
    inner_budget.validate();

    EmbeddingShapeResult result;
    result.best_objective = std::numeric_limits<double>::infinity();
    result.best_cost = std::numeric_limits<long long>::max();

    int outer_call = 0;
    auto outer_objective = [&](std::span<const double> params) {
        const int this_call = outer_call++;
        double value = 0.0;  // penalty objective for infeasible registers
        try {
            const Register reg = parametrized_register(tmpl, params);
            OptBudget inner = inner_budget;
            inner.seed = derive_seed(inner_budget.seed,
                                     {stream::optimizer, 0x454d, static_cast<std::uint64_t>(this_call)});
            const ShapeResult shaped = shape_pulse(g, reg, kind, inner, noise, obj, bounds, cfg);
            value = shaped.best_objective;
            if (value < result.best_objective) {
                result.best_objective = value;
                result.reg = reg;
                result.pulse = shaped.pulse;
                result.embedding_params.assign(params.begin(), params.end());
            }
            result.best_cost = std::min(result.best_cost, shaped.best_cost);
        } catch (const EmbeddingInfeasible&) {
            value = 0.0;
        }
        TraceStep step;
        step.params.assign(params.begin(), params.end());
        step.objective = value;
        step.best_cost_so_far = result.best_cost == std::numeric_limits<long long>::max()
                                    ? 0
                                    : result.best_cost;
        result.outer_trace.push_back(std::move(step));
        return value;
    };

    SmboOptions opts;
    opts.random_starts = std::max(1, std::min(outer_steps, (outer_steps + 2) / 3));
    opts.total_calls = outer_steps;
    opts.seed = derive_seed(inner_budget.seed, {stream::optimizer, 0x4f55});
    smbo_minimize(outer_objective, tmpl.bounds, opts);

    if (result.embedding_params.empty())
        throw EmbeddingInfeasible("shape_with_embedding: every proposed register was infeasible");
    return result;
}

SelectionResult select_best(const Graph& g, CostKind kind, std::span<const Candidate> candidates,
                            int shots, const NoiseParams& noise, std::uint64_t seed,
                            const EmulatorConfig& cfg) {
    if (candidates.empty()) throw std::invalid_argument("select_best: no candidates");
    if (shots < 1) throw std::invalid_argument("select_best: shots must be >= 1");

    SelectionResult result;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const auto& cand = candidates[idx];
        SampleSet samples;
        const std::uint64_t sub = derive_seed(seed, {stream::sampler, static_cast<std::uint64_t>(idx)});
        if (noise.enabled) {
            const int realizations = 5;
            const int per_real = std::max(1, (shots + realizations - 1) / realizations);
            samples = run_noisy(cand.reg, cand.pulse, noise, per_real, realizations, sub, cfg);
        } else {
            const QuantumState state =
                evolve(cand.reg, waveforms(cand.pulse), trivial_realization(cand.reg.size()), cfg);
            samples = sample(state, shots, sub);
        }

        long long best = std::numeric_limits<long long>::max();
        std::string best_bits;
        for (const auto& [bits, count] : samples.counts) {
            const long long cost = qubo_cost(g, bitstring_from_string(bits), kind);
            if (cost < best) {  // map iterates keys in order: first hit is lexicographically least
                best = cost;
                best_bits = bits;
            }
        }
        result.per_candidate_best.push_back(best);
        if (result.index < 0 || best < result.best_cost) {
            result.index = static_cast<int>(idx);
            result.best_cost = best;
            result.best_bits = bitstring_from_string(best_bits);
            result.reg = cand.reg;
            result.pulse = cand.pulse;
        }
    }
    return result;
}

}  // namespace rydopt

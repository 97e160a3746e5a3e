#pragma once

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rydopt {

struct GbrHyper {
    int n_stages = 100;
    double learning_rate = 0.1;
    int max_depth = 3;
    int min_samples_split = 2;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
};

// Axis-aligned regression tree; node 0 is the root.
struct RegressionTree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> x) const;
};

// Stage-wise boosted trees fit to squared-error residuals.
struct TreeEnsemble {
    double base = 0.0;
    double learning_rate = 0.1;
    std::vector<RegressionTree> stages;

    double predict(std::span<const double> x) const;
};

using FeatureMatrix = std::vector<std::vector<double>>;  // rows are samples

// Fits a boosted ensemble minimizing the squared-error loss; the training
// SEL after each stage is appended to sel_trace when given (it is
// nonincreasing for learning rates in (0, 2)). Constant targets and
// single-sample inputs produce a base-only model.
TreeEnsemble fit_gbr(const FeatureMatrix& x, std::span<const double> y, const GbrHyper& hyper = {},
                     std::vector<double>* sel_trace = nullptr);

nlohmann::json ensemble_to_json(const TreeEnsemble& model);
TreeEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace rydopt

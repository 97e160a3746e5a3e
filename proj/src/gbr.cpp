#include "rydopt/gbr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rydopt {

double RegressionTree::predict(std::span<const double> x) const {
    int node = 0;
    while (nodes[node].feature >= 0) {
        const auto& nd = nodes[node];
        node = x[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes[node].value;
}

double TreeEnsemble::predict(std::span<const double> x) const {
    double out = base;
    for (const auto& tree : stages) out += learning_rate * tree.predict(x);
    return out;
}

namespace {

struct SplitResult {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;  // sum of per-side (sum)^2 / count, to be maximized
};

// Indices sorted by each feature, computed once per tree and partitioned
// down the recursion to keep node scans linear.
using SortedLists = std::vector<std::vector<int>>;

SplitResult best_split(const FeatureMatrix& x, std::span<const double> r,
                       const SortedLists& sorted) {
    SplitResult best;
    const int nfeat = static_cast<int>(sorted.size());
    const int count = static_cast<int>(sorted[0].size());
    double total = 0.0;
    for (int idx : sorted[0]) total += r[idx];

    for (int f = 0; f < nfeat; ++f) {
        const auto& order = sorted[f];
        double left_sum = 0.0;
        for (int pos = 0; pos + 1 < count; ++pos) {
            left_sum += r[order[pos]];
            const double v = x[order[pos]][f];
            const double vnext = x[order[pos + 1]][f];
            if (v == vnext) continue;
            const int nl = pos + 1;
            const int nr = count - nl;
            const double right_sum = total - left_sum;
            const double score = left_sum * left_sum / nl + right_sum * right_sum / nr;
            if (!best.found || score > best.score) {
                best.found = true;
                best.feature = f;
                best.threshold = v + (vnext - v) / 2.0;
                best.score = score;
            }
        }
    }
    return best;
}

void grow(RegressionTree& tree, int node_index, const FeatureMatrix& x, std::span<const double> r,
          SortedLists sorted, int depth, const GbrHyper& hyper) {
    const int count = static_cast<int>(sorted[0].size());
    double sum = 0.0;
    for (int idx : sorted[0]) sum += r[idx];
    const double mean = sum / count;

    auto make_leaf = [&]() {
        tree.nodes[node_index].feature = -1;
        tree.nodes[node_index].value = mean;
    };
    if (depth >= hyper.max_depth || count < hyper.min_samples_split) {
        make_leaf();
        return;
    }
    const SplitResult split = best_split(x, r, sorted);
    if (!split.found) {
        make_leaf();
        return;
    }

    SortedLists left_lists(sorted.size()), right_lists(sorted.size());
    for (std::size_t f = 0; f < sorted.size(); ++f) {
        for (int idx : sorted[f]) {
            if (x[idx][split.feature] <= split.threshold)
                left_lists[f].push_back(idx);
            else
                right_lists[f].push_back(idx);
        }
    }
    if (left_lists[0].empty() || right_lists[0].empty()) {
        make_leaf();
        return;
    }

    tree.nodes[node_index].feature = split.feature;
    tree.nodes[node_index].threshold = split.threshold;
    const int left = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    const int right = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[node_index].left = left;
    tree.nodes[node_index].right = right;
    grow(tree, left, x, r, std::move(left_lists), depth + 1, hyper);
    grow(tree, right, x, r, std::move(right_lists), depth + 1, hyper);
}

RegressionTree fit_tree(const FeatureMatrix& x, std::span<const double> r, const SortedLists& sorted,
                        const GbrHyper& hyper) {
    RegressionTree tree;
    tree.nodes.emplace_back();
    grow(tree, 0, x, r, sorted, 0, hyper);
    return tree;
}

}  // namespace

TreeEnsemble fit_gbr(const FeatureMatrix& x, std::span<const double> y, const GbrHyper& hyper,
                     std::vector<double>* sel_trace) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_gbr: feature and target counts differ");
    if (x.empty()) throw std::invalid_argument("fit_gbr: empty training set");
    if (hyper.n_stages < 0 || hyper.max_depth < 1) throw std::invalid_argument("fit_gbr: bad hyperparameters");
    const std::size_t nfeat = x[0].size();
    for (const auto& row : x)
        if (row.size() != nfeat) throw std::invalid_argument("fit_gbr: ragged feature matrix");

    TreeEnsemble model;
    model.learning_rate = hyper.learning_rate;
    model.base = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());

    const bool constant_target =
        std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (x.size() < 2 || constant_target || nfeat == 0) {
        if (sel_trace) {
            double sel = 0.0;
            for (double v : y) sel += (v - model.base) * (v - model.base);
            sel_trace->push_back(sel);
        }
        return model;  // base-only model
    }

    SortedLists sorted(nfeat);
    for (std::size_t f = 0; f < nfeat; ++f) {
        sorted[f].resize(x.size());
        std::iota(sorted[f].begin(), sorted[f].end(), 0);
        std::stable_sort(sorted[f].begin(), sorted[f].end(),
                         [&](int a, int b) { return x[a][f] < x[b][f]; });
    }

    std::vector<double> residual(y.begin(), y.end());
    for (auto& v : residual) v -= model.base;

    for (int stage = 0; stage < hyper.n_stages; ++stage) {
        RegressionTree tree = fit_tree(x, residual, sorted, hyper);
        double sel = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            residual[i] -= hyper.learning_rate * tree.predict(x[i]);
            sel += residual[i] * residual[i];
        }
        model.stages.push_back(std::move(tree));
        if (sel_trace) sel_trace->push_back(sel);
    }
    return model;
}

nlohmann::json ensemble_to_json(const TreeEnsemble& model) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : model.stages) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& nd : tree.nodes)
            nodes.push_back({{"feature", nd.feature},
                             {"threshold", nd.threshold},
                             {"left", nd.left},
                             {"right", nd.right},
                             {"value", nd.value}});
        trees.push_back({{"nodes", nodes}});
    }
    return nlohmann::json{{"base", model.base}, {"lr", model.learning_rate}, {"trees", trees}};
}

TreeEnsemble ensemble_from_json(const nlohmann::json& j) {
    TreeEnsemble model;
    model.base = j.at("base").get<double>();
    model.learning_rate = j.at("lr").get<double>();
    for (const auto& tj : j.at("trees")) {
        RegressionTree tree;
        for (const auto& nj : tj.at("nodes")) {
            TreeNode nd;
            nd.feature = nj.at("feature").get<int>();
            nd.threshold = nj.at("threshold").get<double>();
            nd.left = nj.at("left").get<int>();
            nd.right = nj.at("right").get<int>();
            nd.value = nj.at("value").get<double>();
            tree.nodes.push_back(nd);
        }
        model.stages.push_back(std::move(tree));
    }
    return model;
}

}  // namespace rydopt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "rydopt/gbr.hpp"
#include "rydopt/rng.hpp"

using namespace rydopt;

namespace {

double stddev(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace

TEST_CASE("gbr on degenerate inputs") {
    SUBCASE("constant target collapses to the base prediction") {
        FeatureMatrix x = {{0.0}, {1.0}, {2.0}, {3.0}};
        const std::vector<double> y(4, 2.5);
        std::vector<double> sel;
        const auto model = fit_gbr(x, y, {}, &sel);
        CHECK(model.stages.empty());
        CHECK(model.predict(x[2]) == 2.5);
        CHECK(sel.back() == 0.0);
    }
    SUBCASE("single sample gives a base-only model") {
        const auto model = fit_gbr({{1.0, 2.0}}, std::vector<double>{7.0});
        CHECK(model.stages.empty());
        CHECK(model.predict(std::vector<double>{9.0, 9.0}) == 7.0);
    }
    SUBCASE("empty input throws") {
        CHECK_THROWS(fit_gbr({}, std::vector<double>{}));
    }
}

TEST_CASE("gbr learns a linear function") {
    Rng rng(3);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 200; ++i) {
        const double x1 = rng.uniform(-1.0, 1.0);
        const double x2 = rng.uniform(-1.0, 1.0);
        x.push_back({x1, x2});
        y.push_back(2.0 * x1);
    }
    const auto model = fit_gbr(x, y);
    double rmse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = model.predict(x[i]) - y[i];
        rmse += e * e;
    }
    rmse = std::sqrt(rmse / static_cast<double>(x.size()));
    CHECK(rmse < 0.05 * stddev(y));
}

TEST_CASE("training squared error is nonincreasing per stage") {
    Rng rng(8);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 120; ++i) {
        const double a = rng.uniform(0.0, 1.0), b = rng.uniform(0.0, 1.0), c = rng.uniform(0.0, 1.0);
        x.push_back({a, b, c});
        y.push_back(std::sin(5 * a) + b * b - 0.5 * c + 0.05 * rng.normal(0.0, 1.0));
    }
    std::vector<double> sel;
    const auto model = fit_gbr(x, y, {}, &sel);
    REQUIRE(sel.size() == 100);
    for (std::size_t s = 1; s < sel.size(); ++s) CHECK(sel[s] <= sel[s - 1] + 1e-12);
    CHECK(static_cast<int>(model.stages.size()) == 100);
}

TEST_CASE("ensemble prediction is base plus scaled stage sum") {
    Rng rng(5);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 60; ++i) {
        x.push_back({rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)});
        y.push_back(x.back()[0] * 3.0 - x.back()[1]);
    }
    const auto model = fit_gbr(x, y);
    const std::vector<double> probe = {0.3, 0.6};
    double manual = model.base;
    for (const auto& tree : model.stages) manual += model.learning_rate * tree.predict(probe);
    CHECK(model.predict(probe) == doctest::Approx(manual).epsilon(1e-15));
}

TEST_CASE("json round trip preserves predictions") {
    Rng rng(17);
    FeatureMatrix x;
    std::vector<double> y;
    for (int i = 0; i < 80; ++i) {
        x.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
        y.push_back(x.back()[0] * x.back()[1] + std::cos(x.back()[2]));
    }
    const auto model = fit_gbr(x, y);
    const auto restored = ensemble_from_json(ensemble_to_json(model));
    for (int probe = 0; probe < 20; ++probe) {
        const std::vector<double> q = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                                       rng.uniform(-2.0, 2.0)};
        CHECK(std::abs(model.predict(q) - restored.predict(q)) <= 1e-12);
    }
}

#include "rydopt/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace rydopt {

namespace {

// Fritsch-Carlson tangents for uniformly spaced knots.
std::vector<double> pchip_tangents(std::span<const double> y, double h) {
    const int m = static_cast<int>(y.size());
    std::vector<double> slopes(m - 1);
    for (int i = 0; i + 1 < m; ++i) slopes[i] = (y[i + 1] - y[i]) / h;

    std::vector<double> tan(m, 0.0);
    for (int i = 1; i + 1 < m; ++i) {
        const double a = slopes[i - 1], b = slopes[i];
        if (a * b > 0.0) tan[i] = 2.0 * a * b / (a + b);  // harmonic mean keeps monotonicity
    }
    auto edge = [](double d0, double d1) {
        double t = (3.0 * d0 - d1) / 2.0;
        if (t * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(t) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return t;
    };
    tan[0] = m > 2 ? edge(slopes[0], slopes[1]) : slopes[0];
    tan[m - 1] = m > 2 ? edge(slopes[m - 2], slopes[m - 3]) : slopes[m - 2];
    return tan;
}

}  // namespace

double pchip_value(std::span<const double> values, double duration, double t) {
    if (values.size() < 2) throw std::invalid_argument("pchip_value: need at least two knots");
    if (duration <= 0.0) throw std::invalid_argument("pchip_value: duration must be positive");
    const double slack = 1e-9 * std::max(1.0, duration);  // absorbs end-of-step rounding
    if (t < -slack || t > duration + slack) throw std::out_of_range("pchip_value: time outside the pulse");
    t = std::clamp(t, 0.0, duration);

    const int m = static_cast<int>(values.size());
    const double h = duration / (m - 1);
    const auto tan = pchip_tangents(values, h);

    int seg = std::min(static_cast<int>(t / h), m - 2);
    const double s = (t - seg * h) / h;
    const double y0 = values[seg], y1 = values[seg + 1];
    const double t0 = tan[seg] * h, t1 = tan[seg + 1] * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * t0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * t1;
}

double Pulse::omega_at(double t) const {
    const std::array<double, 5> knots = {0.0, omega_points[0], omega_points[1], omega_points[2], 0.0};
    return pchip_value(knots, duration_us, t);
}

double Pulse::delta_at(double t) const { return pchip_value(delta_points, duration_us, t); }

void Pulse::validate(const PulseBounds& b) const {
    for (double w : omega_points)
        if (w < 0.0 || w > b.omega_max)
            throw std::invalid_argument("pulse: omega value outside [0, omega_max]");
    for (double d : delta_points)
        if (std::abs(d) > b.delta_max) throw std::invalid_argument("pulse: |delta| exceeds delta_max");
    if (duration_us < b.duration_min || duration_us > b.duration_max)
        throw std::invalid_argument("pulse: duration outside the allowed range");
}

std::array<double, kPulseParamCount> Pulse::to_params() const {
    return {omega_points[0], omega_points[1], omega_points[2], delta_points[0], delta_points[1],
            delta_points[2], delta_points[3], delta_points[4], duration_us};
}

Pulse Pulse::from_params(std::span<const double> params) {
    if (params.size() != kPulseParamCount) throw std::invalid_argument("pulse: expected 9 parameters");
    Pulse p;
    p.omega_points = {params[0], params[1], params[2]};
    p.delta_points = {params[3], params[4], params[5], params[6], params[7]};
    p.duration_us = params[8];
    return p;
}

Pulse Pulse::clamped_from_params(std::span<const double> params, const PulseBounds& b) {
    Pulse p = from_params(params);
    for (auto& w : p.omega_points) w = std::clamp(w, 0.0, b.omega_max);
    for (auto& d : p.delta_points) d = std::clamp(d, -b.delta_max, b.delta_max);
    p.duration_us = std::clamp(p.duration_us, b.duration_min, b.duration_max);
    return p;
}

const std::array<const char*, kPulseParamCount> kPulseParamNames = {
    "omega_1", "omega_2", "omega_3", "delta_1", "delta_2", "delta_3", "delta_4", "delta_5",
    "duration_us"};

std::array<std::pair<double, double>, kPulseParamCount> pulse_param_box(const PulseBounds& b) {
    std::array<std::pair<double, double>, kPulseParamCount> box;
    for (int i = 0; i < 3; ++i) box[i] = {0.0, b.omega_max};
    for (int i = 3; i < 8; ++i) box[i] = {-b.delta_max, b.delta_max};
    box[8] = {b.duration_min, b.duration_max};
    return box;
}

nlohmann::json pulse_to_json(const Pulse& pulse) {
    return nlohmann::json{
        {"omega_rad_per_us", pulse.omega_points},
        {"delta_rad_per_us", pulse.delta_points},
        {"duration_us", pulse.duration_us},
    };
}

Pulse pulse_from_json(const nlohmann::json& j) {
    Pulse p;
    const auto& w = j.at("omega_rad_per_us");
    const auto& d = j.at("delta_rad_per_us");
    if (w.size() != 3 || d.size() != 5) throw std::invalid_argument("pulse json: wrong waveform sizes");
    for (int i = 0; i < 3; ++i) p.omega_points[i] = w[i].get<double>();
    for (int i = 0; i < 5; ++i) p.delta_points[i] = d[i].get<double>();
    p.duration_us = j.at("duration_us").get<double>();
    return p;
}

}  // namespace rydopt

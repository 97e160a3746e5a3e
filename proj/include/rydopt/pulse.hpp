#pragma once

#include <array>
#include <span>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace rydopt {

struct PulseBounds {
    double omega_max = 12.6;     // rad/us
    double delta_max = 25.0;     // rad/us
    double duration_min = 0.5;   // us
    double duration_max = 4.0;   // us
};

// Monotone piecewise-cubic (Fritsch-Carlson) interpolation through equally
// spaced control points on [0, duration]. Continuous first derivative, no
// overshoot beyond adjacent control values.
double pchip_value(std::span<const double> values, double duration, double t);

inline constexpr int kPulseParamCount = 9;

// A laser pulse described by nine free parameters: three interior Rabi
// values (the endpoints are pinned to zero), five detuning values, and the
// total duration. Both waveforms interpolate through five equally spaced
// control points.
struct Pulse {
    std::array<double, 3> omega_points{};  // rad/us, interior knots
    std::array<double, 5> delta_points{};  // rad/us
    double duration_us = 1.0;

    double omega_at(double t) const;
    double delta_at(double t) const;
    void validate(const PulseBounds& bounds = {}) const;

    // Canonical parameter vector (omega1..3, delta1..5, duration) used by
    // the optimizer box and the prediction targets.
    std::array<double, kPulseParamCount> to_params() const;
    static Pulse from_params(std::span<const double> params);
    static Pulse clamped_from_params(std::span<const double> params, const PulseBounds& bounds = {});
};

extern const std::array<const char*, kPulseParamCount> kPulseParamNames;

// Per-parameter search box implied by the bounds, in canonical order.
std::array<std::pair<double, double>, kPulseParamCount> pulse_param_box(const PulseBounds& bounds = {});

nlohmann::json pulse_to_json(const Pulse& pulse);
Pulse pulse_from_json(const nlohmann::json& j);

}  // namespace rydopt

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rydopt {

// Static noise model: SPAM rates, thermal Doppler broadening and the
// Gaussian laser profile. Dephasing is deliberately out of scope.
struct NoiseParams {
    double eta = 0.0;             // preparation failure probability per atom
    double epsilon = 0.0;         // false-positive measurement probability
    double epsilon_prime = 0.0;   // false-negative measurement probability
    double temperature_uk = 0.0;  // atom temperature, micro-kelvin
    double laser_waist_um = 148.0;
    bool enabled = false;

    static NoiseParams off() { return NoiseParams{}; }

    static NoiseParams noisy_plus() {
        NoiseParams p;
        p.eta = 0.005;
        p.epsilon = 0.03;
        p.epsilon_prime = 0.08;
        p.temperature_uk = 30.0;
        p.laser_waist_um = 148.0;
        p.enabled = true;
        return p;
    }

    // Same thermal and laser parameters, SPAM error rates halved.
    static NoiseParams noisy_minus() {
        NoiseParams p = noisy_plus();
        p.eta /= 2.0;
        p.epsilon /= 2.0;
        p.epsilon_prime /= 2.0;
        return p;
    }

    static NoiseParams preset(const std::string& name) {
        if (name == "off") return off();
        if (name == "plus") return noisy_plus();
        if (name == "minus") return noisy_minus();
        throw std::invalid_argument("unknown noise preset: " + name);
    }

    // Standard deviation of the per-atom Doppler detuning shift in rad/us:
    // k_eff * sqrt(k_B T / m) for Rb-87 with k_eff = 8.7 rad/um.
    double doppler_sigma() const {
        constexpr double k_eff_rad_per_um = 8.7;
        constexpr double boltzmann_j_per_k = 1.380649e-23;
        constexpr double rb87_mass_kg = 86.909180527 * 1.66053906660e-27;
        const double v_rms_m_per_s = std::sqrt(boltzmann_j_per_k * temperature_uk * 1e-6 / rb87_mass_kg);
        return k_eff_rad_per_um * v_rms_m_per_s;  // 1 m/s == 1 um/us
    }

    void validate() const {
        auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!prob(eta) || !prob(epsilon) || !prob(epsilon_prime))
            throw std::invalid_argument("noise: probabilities must lie in [0,1]");
        if (temperature_uk < 0.0) throw std::invalid_argument("noise: temperature must be nonnegative");
        if (laser_waist_um <= 0.0) throw std::invalid_argument("noise: laser waist must be positive");
    }
};

}  // namespace rydopt

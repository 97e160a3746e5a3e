#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rydopt/noise.hpp"
#include "rydopt/pulse.hpp"
#include "rydopt/register.hpp"
#include "rydopt/rng.hpp"

namespace rydopt {

struct EmulatorConfig {
    double c6 = 5420503.0;  // rad um^6 / us
    double dt_us = 0.001;   // RK4 step ceiling
    int max_atoms = 16;
};

// Distance at which the interaction strength equals the Rabi frequency.
double blockade_radius(double omega, double c6 = EmulatorConfig{}.c6);

// U_ij = c6 / r_ij^6, zero diagonal. Throws on coincident atoms.
std::vector<std::vector<double>> interactions(const Register& reg, double c6 = EmulatorConfig{}.c6);

// State vector over the computational basis; bit i of a basis index is the
// Rydberg occupation of atom i.
struct QuantumState {
    int n = 0;
    std::vector<std::complex<double>> amplitudes;

    double norm() const;
    double probability(std::uint64_t basis_index) const;
};

struct SampleSet {
    std::map<std::string, long long> counts;
    long long total = 0;

    void add(const std::string& bitstring, long long k = 1);
    void merge(const SampleSet& other);
};

nlohmann::json sampleset_to_json(const SampleSet& s);
SampleSet sampleset_from_json(const nlohmann::json& j);

// One static noise draw: which atoms failed preparation, the per-atom
// Doppler detuning offsets and the laser-profile Rabi attenuation.
struct NoiseRealization {
    std::vector<std::uint8_t> bad_atoms;
    std::vector<double> detuning_offset;  // rad/us
    std::vector<double> omega_scale;      // multiplicative, 1 at the waist center
};

NoiseRealization trivial_realization(int n);
NoiseRealization draw_noise_realization(const NoiseParams& noise, const Register& reg, Rng& rng);

// Time-dependent drive; Pulse is the standard provider, constant drives are
// used by calibration checks. The amplitude bounds feed the integrator's
// stability limit and must dominate the waveforms.
struct DriveWaveforms {
    std::function<double(double)> omega;
    std::function<double(double)> delta;
    double duration_us = 0.0;
    double omega_abs_max = 0.0;
    double delta_abs_max = 0.0;
};

DriveWaveforms waveforms(const Pulse& pulse);
DriveWaveforms constant_drive(double omega, double delta, double duration_us);

// Integrates i d|psi>/dt = H(t) |psi> from |0...0> with
// H(t) = sum_i W_i(t) sx_i - sum_i D_i(t) n_i + sum_{i<j} U_ij n_i n_j
// using fixed-step RK4. Atoms flagged bad in the realization are frozen in
// |0> and excluded from H.
QuantumState evolve(const Register& reg, const DriveWaveforms& drive,
                    const NoiseRealization& realization, const EmulatorConfig& cfg = {});
QuantumState evolve(const Register& reg, const Pulse& pulse,
                    const NoiseParams& noise = NoiseParams::off(),
                    std::uint64_t realization_seed = 0, const EmulatorConfig& cfg = {});

// Dense 2^n x 2^n Hamiltonian at time t (row-major, real symmetric);
// intended for small-n verification.
std::vector<double> dense_hamiltonian(const Register& reg, const DriveWaveforms& drive,
                                      const NoiseRealization& realization, double t,
                                      const EmulatorConfig& cfg = {});

SampleSet sample(const QuantumState& state, long long shots, std::uint64_t seed);

// Measurement errors: a true 0 reads 1 with probability epsilon, a true 1
// reads 0 with probability epsilon_prime. Badly prepared atoms count as
// true 0 before the flips.
SampleSet apply_spam(const SampleSet& samples, const NoiseParams& noise,
                     const std::vector<std::uint8_t>& bad_atoms, std::uint64_t seed);

// Repeated noisy emulation: per realization draws the static noise, evolves,
// samples and applies SPAM; counts are merged. With noise disabled this
// reduces to evolve + sample with realizations * shots_per_real shots and
// the sampler substream of `seed`.
SampleSet run_noisy(const Register& reg, const Pulse& pulse, const NoiseParams& noise,
                    int shots_per_real = 100, int realizations = 5, std::uint64_t seed = 0,
                    const EmulatorConfig& cfg = {});

}  // namespace rydopt

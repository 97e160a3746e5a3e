#include "rydopt/emulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rydopt/graph.hpp"

namespace rydopt {

double blockade_radius(double omega, double c6) {
    if (omega <= 0.0) throw std::invalid_argument("blockade_radius: omega must be positive");
    return std::pow(c6 / omega, 1.0 / 6.0);
}

std::vector<std::vector<double>> interactions(const Register& reg, double c6) {
    const int n = reg.size();
    std::vector<std::vector<double>> u(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = distance(reg.positions_um[i], reg.positions_um[j]);
            if (r <= 0.0) throw std::invalid_argument("interactions: coincident atoms");
            const double v = c6 / std::pow(r, 6.0);
            u[i][j] = v;
            u[j][i] = v;
        }
    }
    return u;
}

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

double QuantumState::probability(std::uint64_t basis_index) const {
    return std::norm(amplitudes.at(basis_index));
}

void SampleSet::add(const std::string& bitstring, long long k) {
    counts[bitstring] += k;
    total += k;
}

void SampleSet::merge(const SampleSet& other) {
    for (const auto& [bits, k] : other.counts) counts[bits] += k;
    total += other.total;
}

nlohmann::json sampleset_to_json(const SampleSet& s) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [bits, k] : s.counts) counts[bits] = k;
    return nlohmann::json{{"total", s.total}, {"counts", counts}};
}

SampleSet sampleset_from_json(const nlohmann::json& j) {
    SampleSet s;
    for (const auto& [bits, k] : j.at("counts").items()) s.counts[bits] = k.get<long long>();
    s.total = j.at("total").get<long long>();
    long long check = 0;
    for (const auto& [bits, k] : s.counts) check += k;
    if (check != s.total) throw std::invalid_argument("sampleset json: counts do not sum to total");
    return s;
}

NoiseRealization trivial_realization(int n) {
    NoiseRealization r;
    r.bad_atoms.assign(n, 0);
    r.detuning_offset.assign(n, 0.0);
    r.omega_scale.assign(n, 1.0);
    return r;
}

NoiseRealization draw_noise_realization(const NoiseParams& noise, const Register& reg, Rng& rng) {
    const int n = reg.size();
    if (!noise.enabled) return trivial_realization(n);
    noise.validate();

    NoiseRealization r = trivial_realization(n);
    for (int i = 0; i < n; ++i) r.bad_atoms[i] = rng.bernoulli(noise.eta);
    const double sigma = noise.doppler_sigma();
    for (int i = 0; i < n; ++i) r.detuning_offset[i] = sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0;
    const Vec2 c = reg.centroid();
    for (int i = 0; i < n; ++i) {
        const double ri = distance(reg.positions_um[i], c);
        r.omega_scale[i] = std::exp(-ri * ri / (noise.laser_waist_um * noise.laser_waist_um));
    }
    return r;
}

DriveWaveforms waveforms(const Pulse& pulse) {
    DriveWaveforms d;
    d.omega = [pulse](double t) { return pulse.omega_at(t); };
    d.delta = [pulse](double t) { return pulse.delta_at(t); };
    d.duration_us = pulse.duration_us;
    // monotone interpolation cannot overshoot the knots
    for (double w : pulse.omega_points) d.omega_abs_max = std::max(d.omega_abs_max, std::abs(w));
    for (double x : pulse.delta_points) d.delta_abs_max = std::max(d.delta_abs_max, std::abs(x));
    return d;
}

DriveWaveforms constant_drive(double omega, double delta, double duration_us) {
    DriveWaveforms d;
    d.omega = [omega](double) { return omega; };
    d.delta = [delta](double) { return delta; };
    d.duration_us = duration_us;
    d.omega_abs_max = std::abs(omega);
    d.delta_abs_max = std::abs(delta);
    return d;
}

namespace {

using Amplitudes = std::vector<std::complex<double>>;

struct CompressedSystem {
    int n_full = 0;
    std::vector<int> active;            // compressed index -> original atom
    std::vector<double> omega_scale;    // per active atom
    std::vector<double> diag_static;    // interaction sum minus doppler offsets
    std::vector<double> occupancy;      // popcount per basis state
};

CompressedSystem build_system(const Register& reg, const NoiseRealization& real,
                              const EmulatorConfig& cfg) {
    const int n = reg.size();
    if (n < 1) throw std::invalid_argument("evolve: empty register");
    if (n > cfg.max_atoms) throw std::invalid_argument("evolve: register exceeds the simulation size limit");
    if (static_cast<int>(real.bad_atoms.size()) != n || static_cast<int>(real.detuning_offset.size()) != n ||
        static_cast<int>(real.omega_scale.size()) != n)
        throw std::invalid_argument("evolve: noise realization does not match register size");

    CompressedSystem sys;
    sys.n_full = n;
    for (int i = 0; i < n; ++i)
        if (!real.bad_atoms[i]) sys.active.push_back(i);
    const int m = static_cast<int>(sys.active.size());

    const auto u = interactions(reg, cfg.c6);
    sys.omega_scale.resize(m);
    for (int a = 0; a < m; ++a) sys.omega_scale[a] = real.omega_scale[sys.active[a]];

    const std::size_t dim = std::size_t{1} << m;
    sys.diag_static.assign(dim, 0.0);
    sys.occupancy.assign(dim, 0.0);
    for (std::size_t b = 0; b < dim; ++b) {
        sys.occupancy[b] = static_cast<double>(std::popcount(b));
        double diag = 0.0;
        for (int a = 0; a < m; ++a) {
            if (!((b >> a) & 1U)) continue;
            diag -= real.detuning_offset[sys.active[a]];
            for (int c = a + 1; c < m; ++c)
                if ((b >> c) & 1U) diag += u[sys.active[a]][sys.active[c]];
        }
        sys.diag_static[b] = diag;
    }
    return sys;
}

// out = H(t) in, with H real: diag(t) + global sigma-x drive.
void apply_h(const CompressedSystem& sys, double omega, double delta, const Amplitudes& in,
             Amplitudes& out) {
    const std::size_t dim = in.size();
    for (std::size_t b = 0; b < dim; ++b)
        out[b] = (sys.diag_static[b] - delta * sys.occupancy[b]) * in[b];
    const int m = static_cast<int>(sys.active.size());
    for (int a = 0; a < m; ++a) {
        const double wa = omega * sys.omega_scale[a];
        if (wa == 0.0) continue;
        const std::size_t half = std::size_t{1} << a;
        for (std::size_t base = 0; base < dim; base += 2 * half) {
            for (std::size_t off = 0; off < half; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + half;
                out[i0] += wa * in[i1];
                out[i1] += wa * in[i0];
            }
        }
    }
}

}  // namespace

QuantumState evolve(const Register& reg, const DriveWaveforms& drive,
                    const NoiseRealization& realization, const EmulatorConfig& cfg) {
    if (drive.duration_us <= 0.0) throw std::invalid_argument("evolve: duration must be positive");
    const CompressedSystem sys = build_system(reg, realization, cfg);
    const int m = static_cast<int>(sys.active.size());
    const std::size_t dim = std::size_t{1} << m;

    Amplitudes x(dim, {0.0, 0.0});
    x[0] = {1.0, 0.0};
    Amplitudes hx(dim), k(dim), yt(dim), acc(dim);

    const long long nsteps =
        std::max<long long>(1, static_cast<long long>(std::ceil(drive.duration_us / cfg.dt_us - 1e-12)));
    const double h = drive.duration_us / static_cast<double>(nsteps);

    for (long long step = 0; step < nsteps; ++step) {
        const double t0 = static_cast<double>(step) * h;
        const double th = t0 + 0.5 * h;
        const double t1 = t0 + h;

        // Gauge shift: subtracting <H> from the diagonal changes only a
        // global phase but keeps the per-step |H| dt small enough for the
        // norm-drift budget at dt = 1 ns.
        apply_h(sys, drive.omega(t0), drive.delta(t0), x, hx);
        double num = 0.0, den = 0.0;
        for (std::size_t b = 0; b < dim; ++b) {
            num += x[b].real() * hx[b].real() + x[b].imag() * hx[b].imag();
            den += std::norm(x[b]);
        }
        const double eshift = den > 0.0 ? num / den : 0.0;

        // k1 = -i (H x - eshift x)
        for (std::size_t b = 0; b < dim; ++b) {
            const std::complex<double> v = hx[b] - eshift * x[b];
            k[b] = {v.imag(), -v.real()};
            acc[b] = x[b] + (h / 6.0) * k[b];
            yt[b] = x[b] + (h / 2.0) * k[b];
        }
        const double wm = drive.omega(th), dm = drive.delta(th);
        apply_h(sys, wm, dm, yt, hx);
        for (std::size_t b = 0; b < dim; ++b) {
            const std::complex<double> v = hx[b] - eshift * yt[b];
            k[b] = {v.imag(), -v.real()};
            acc[b] += (h / 3.0) * k[b];
        }
        for (std::size_t b = 0; b < dim; ++b) yt[b] = x[b] + (h / 2.0) * k[b];
        apply_h(sys, wm, dm, yt, hx);
        for (std::size_t b = 0; b < dim; ++b) {
            const std::complex<double> v = hx[b] - eshift * yt[b];
            k[b] = {v.imag(), -v.real()};
            acc[b] += (h / 3.0) * k[b];
        }
        for (std::size_t b = 0; b < dim; ++b) yt[b] = x[b] + h * k[b];
        apply_h(sys, drive.omega(t1), drive.delta(t1), yt, hx);
        for (std::size_t b = 0; b < dim; ++b) {
            const std::complex<double> v = hx[b] - eshift * yt[b];
            k[b] = {v.imag(), -v.real()};
            x[b] = acc[b] + (h / 6.0) * k[b];
        }
    }

    for (const auto& a : x)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::runtime_error("evolve: integration produced non-finite amplitudes");

    QuantumState state;
    state.n = sys.n_full;
    if (m == sys.n_full) {
        state.amplitudes = std::move(x);
        return state;
    }
    // Scatter the active-subspace amplitudes back into the full register
    // space; frozen atoms stay in |0>.
    state.amplitudes.assign(std::size_t{1} << sys.n_full, {0.0, 0.0});
    for (std::size_t b = 0; b < dim; ++b) {
        std::uint64_t full = 0;
        for (int a = 0; a < m; ++a)
            if ((b >> a) & 1U) full |= std::uint64_t{1} << sys.active[a];
        state.amplitudes[full] = x[b];
    }
    return state;
}

QuantumState evolve(const Register& reg, const Pulse& pulse, const NoiseParams& noise,
                    std::uint64_t realization_seed, const EmulatorConfig& cfg) {
    NoiseRealization real = trivial_realization(reg.size());
    if (noise.enabled) {
        Rng rng(derive_seed(realization_seed, {stream::noise}));
        real = draw_noise_realization(noise, reg, rng);
    }
    return evolve(reg, waveforms(pulse), real, cfg);
}

std::vector<double> dense_hamiltonian(const Register& reg, const DriveWaveforms& drive,
                                      const NoiseRealization& realization, double t,
                                      const EmulatorConfig& cfg) {
    const int n = reg.size();
    if (n > 12) throw std::invalid_argument("dense_hamiltonian: register too large for a dense matrix");
    if (static_cast<int>(realization.bad_atoms.size()) != n)
        throw std::invalid_argument("dense_hamiltonian: realization does not match register");
    const auto u = interactions(reg, cfg.c6);
    const double w = drive.omega(t);
    const double d = drive.delta(t);

    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> hmat(dim * dim, 0.0);
    for (std::size_t b = 0; b < dim; ++b) {
        double diag = 0.0;
        for (int i = 0; i < n; ++i) {
            if (realization.bad_atoms[i] || !((b >> i) & 1U)) continue;
            diag -= d + realization.detuning_offset[i];
            for (int j = i + 1; j < n; ++j)
                if (!realization.bad_atoms[j] && ((b >> j) & 1U)) diag += u[i][j];
        }
        hmat[b * dim + b] = diag;
        for (int i = 0; i < n; ++i) {
            if (realization.bad_atoms[i]) continue;
            const std::size_t flipped = b ^ (std::size_t{1} << i);
            hmat[b * dim + flipped] += w * realization.omega_scale[i];
        }
    }
    return hmat;
}

SampleSet sample(const QuantumState& state, long long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
    const std::size_t dim = state.amplitudes.size();
    std::vector<double> cumulative(dim);
    double running = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
        running += std::norm(state.amplitudes[b]);
        cumulative[b] = running;
    }
    if (running <= 0.0) throw std::invalid_argument("sample: state has zero norm");

    Rng rng(seed);
    std::map<std::uint64_t, long long> index_counts;
    for (long long s = 0; s < shots; ++s) {
        const double u = rng.uniform() * running;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::uint64_t idx = std::min<std::uint64_t>(it - cumulative.begin(), dim - 1);
        ++index_counts[idx];
    }

    SampleSet out;
    for (const auto& [idx, count] : index_counts)
        out.add(bitstring_to_string(bitstring_from_mask(idx, state.n)), count);
    return out;
}

SampleSet apply_spam(const SampleSet& samples, const NoiseParams& noise,
                     const std::vector<std::uint8_t>& bad_atoms, std::uint64_t seed) {
    noise.validate();
    Rng rng(seed);
    SampleSet out;
    for (const auto& [bits, count] : samples.counts) {
        Bitstring base = bitstring_from_string(bits);
        for (std::size_t i = 0; i < base.size() && i < bad_atoms.size(); ++i)
            if (bad_atoms[i]) base[i] = 0;  // failed preparation reads as a true 0
        Bitstring reported(base.size());
        for (long long s = 0; s < count; ++s) {
            for (std::size_t i = 0; i < base.size(); ++i) {
                if (base[i] == 0)
                    reported[i] = rng.bernoulli(noise.epsilon) ? 1 : 0;
                else
                    reported[i] = rng.bernoulli(noise.epsilon_prime) ? 0 : 1;
            }
            out.add(bitstring_to_string(reported));
        }
    }
    return out;
}

SampleSet run_noisy(const Register& reg, const Pulse& pulse, const NoiseParams& noise,
                    int shots_per_real, int realizations, std::uint64_t seed,
                    const EmulatorConfig& cfg) {
    if (shots_per_real < 1 || realizations < 1)
        throw std::invalid_argument("run_noisy: shots_per_real and realizations must be >= 1");

    if (!noise.enabled) {
        const QuantumState state = evolve(reg, waveforms(pulse), trivial_realization(reg.size()), cfg);
        return sample(state, static_cast<long long>(shots_per_real) * realizations,
                      derive_seed(seed, {stream::sampler}));
    }

    SampleSet merged;
    for (int r = 0; r < realizations; ++r) {
        Rng noise_rng(derive_seed(seed, {stream::noise, static_cast<std::uint64_t>(r)}));
        const NoiseRealization real = draw_noise_realization(noise, reg, noise_rng);
        const QuantumState state = evolve(reg, waveforms(pulse), real, cfg);
        SampleSet s = sample(state, shots_per_real,
                             derive_seed(seed, {stream::sampler, static_cast<std::uint64_t>(r)}));
        s = apply_spam(s, noise, real.bad_atoms,
                       derive_seed(seed, {stream::noise, 0x5350414d, static_cast<std::uint64_t>(r)}));
        merged.merge(s);
    }
    return merged;
}

}  // namespace rydopt

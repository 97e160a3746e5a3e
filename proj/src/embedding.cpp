#include "rydopt/embedding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rydopt/rng.hpp"

namespace rydopt {

std::string layout_kind_name(LayoutKind kind) {
    switch (kind) {
        case LayoutKind::Spring: return "spring";
        case LayoutKind::RandomWeightSpring: return "random";
        case LayoutKind::WeightedSpring: return "weighted";
        case LayoutKind::InverseWeightSpring: return "inverse";
    }
    return "spring";
}

LayoutKind layout_kind_from_name(const std::string& name) {
    for (LayoutKind kind : kAllLayoutKinds)
        if (layout_kind_name(kind) == name) return kind;
    throw std::invalid_argument("unknown layout kind: " + name);
}

std::vector<double> layout_weights(const Graph& g, LayoutKind kind, std::uint64_t seed) {
    std::vector<double> w(g.edges.size(), 1.0);
    switch (kind) {
        case LayoutKind::Spring:
            break;
        case LayoutKind::RandomWeightSpring: {
            Rng rng(derive_seed(seed, {stream::layout, 0x77}));
            for (auto& wi : w) wi = rng.uniform(0.1, 2.0);
            break;
        }
        case LayoutKind::WeightedSpring:
        case LayoutKind::InverseWeightSpring: {
            const auto deg = g.degrees();
            const double sign = kind == LayoutKind::WeightedSpring ? 1.0 : -1.0;
            for (std::size_t e = 0; e < g.edges.size(); ++e) {
                const auto& [i, j] = g.edges[e];
                w[e] = sign * deg[i] * deg[j];
            }
            break;
        }
    }
    return w;
}

namespace {

double total_energy(const Graph& g, std::span<const double> weights, const std::vector<Vec2>& pos,
                    double k) {
    double energy = 0.0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& [i, j] = g.edges[e];
        const double r = distance(pos[i], pos[j]);
        energy += weights[e] * r * r / k;
    }
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = 0; j < pos.size(); ++j) {
            if (i == j) continue;
            const double r = std::max(distance(pos[i], pos[j]), 1e-9);
            energy -= k * k / r;
        }
    return energy;
}

}  // namespace

FrResult fr_layout(const Graph& g, std::span<const double> weights, const LayoutParams& p,
                   std::optional<std::vector<Vec2>> initial) {
    if (g.n < 1) throw std::invalid_argument("fr_layout: empty graph");
    if (p.iterations < 1) throw std::invalid_argument("fr_layout: iterations must be >= 1");
    if (!weights.empty() && weights.size() != g.edges.size())
        throw std::invalid_argument("fr_layout: weight count does not match edge count");

    FrResult result;
    if (g.n == 1) {
        result.positions = {Vec2{0.0, 0.0}};
        result.energy_trace = {0.0};
        return result;
    }

    std::vector<double> w(weights.begin(), weights.end());
    if (w.empty()) w.assign(g.edges.size(), 1.0);

    std::vector<Vec2> pos;
    if (initial) {
        if (static_cast<int>(initial->size()) != g.n)
            throw std::invalid_argument("fr_layout: initial position count does not match order");
        pos = *initial;
    } else {
        Rng rng(derive_seed(p.seed, {stream::layout, 0x69}));
        pos.resize(g.n);
        for (auto& q : pos) {
            q.x = rng.uniform();
            q.y = rng.uniform();
        }
    }

    const double k = std::sqrt(p.area / g.n);
    const double t0 = 0.1 * std::sqrt(p.area);
    std::vector<Vec2> disp(g.n);

    double prev_energy = std::numeric_limits<double>::quiet_NaN();
    for (int iter = 1; iter <= p.iterations; ++iter) {
        for (auto& d : disp) d = {0.0, 0.0};

        for (int i = 0; i < g.n; ++i) {
            for (int j = i + 1; j < g.n; ++j) {
                double dx = pos[i].x - pos[j].x;
                double dy = pos[i].y - pos[j].y;
                double r = std::hypot(dx, dy);
                if (r < 1e-9) {
                    dx = 1e-9;
                    dy = 0.0;
                    r = 1e-9;
                }
                const double f = k * k / (r * r);  // repulsive magnitude per unit vector
                disp[i].x += dx * f;
                disp[i].y += dy * f;
                disp[j].x -= dx * f;
                disp[j].y -= dy * f;
            }
        }
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto& [i, j] = g.edges[e];
            double dx = pos[i].x - pos[j].x;
            double dy = pos[i].y - pos[j].y;
            double r = std::hypot(dx, dy);
            if (r < 1e-9) {
                dx = 1e-9;
                dy = 0.0;
                r = 1e-9;
            }
            const double f = w[e] * r / k;  // attractive magnitude per unit vector
            disp[i].x -= dx * f;
            disp[i].y -= dy * f;
            disp[j].x += dx * f;
            disp[j].y += dy * f;
        }

        const double t = t0 * (1.0 - static_cast<double>(iter) / p.iterations);
        for (int i = 0; i < g.n; ++i) {
            const double len = std::hypot(disp[i].x, disp[i].y);
            if (len < 1e-12) continue;
            const double step = std::min(len, t);
            pos[i].x += disp[i].x / len * step;
            pos[i].y += disp[i].y / len * step;
        }

        const double energy = total_energy(g, w, pos, k);
        result.energy_trace.push_back(energy);
        if (iter > 1 && std::abs(energy - prev_energy) < 1e-6) break;
        prev_energy = energy;
    }

    result.positions = std::move(pos);
    return result;
}

Register rescale_to_constraints(std::span<const Vec2> positions, const DeviceConstraints& c) {
    if (positions.empty()) throw std::invalid_argument("rescale_to_constraints: no positions");

    Register reg;
    reg.positions_um.assign(positions.begin(), positions.end());
    const Vec2 centroid = reg.centroid();
    for (auto& p : reg.positions_um) {
        p.x -= centroid.x;
        p.y -= centroid.y;
    }
    if (reg.size() == 1) {
        return reg;  // a single centered atom satisfies any constraints
    }

    const double dmin = reg.min_pairwise_distance();
    const double rmax = reg.max_centroid_distance();
    const double alpha_lo = dmin > 0.0 ? c.min_distance_um / dmin
                            : c.min_distance_um > 0.0 ? std::numeric_limits<double>::infinity()
                                                      : 0.0;
    const double alpha_hi = rmax > 0.0 ? c.max_radius_um / rmax
                                       : std::numeric_limits<double>::infinity();
    if (std::isinf(alpha_lo) || !(alpha_lo <= alpha_hi)) {
        std::ostringstream msg;
        msg << "register rescaling infeasible: satisfying the minimum atom distance of "
            << c.min_distance_um << " um needs scale >= " << alpha_lo
            << " while the maximum centroid radius of " << c.max_radius_um
            << " um needs scale <= " << alpha_hi << "; use a different embedding strategy";
        throw EmbeddingInfeasible(msg.str());
    }

    double alpha = 1.0;
    if (std::isinf(alpha_hi)) {
        alpha = std::max(alpha_lo, 1.0);
    } else if (alpha_lo <= 0.0) {
        alpha = std::min(1.0, alpha_hi);
    } else {
        alpha = std::sqrt(alpha_lo * alpha_hi);  // midpoint in log scale
    }
    for (auto& p : reg.positions_um) {
        p.x *= alpha;
        p.y *= alpha;
    }
    return reg;
}

Register make_register(const Graph& g, LayoutKind kind, const LayoutParams& p,
                       const DeviceConstraints& constraints) {
    if (p.scale <= 0.0) throw std::invalid_argument("make_register: scale must be positive");
    const auto weights = layout_weights(g, kind, p.seed);
    FrResult fr = fr_layout(g, weights, p);
    for (auto& q : fr.positions) {
        q.x *= p.scale;
        q.y *= p.scale;
    }
    return rescale_to_constraints(fr.positions, constraints);
}

Register parametrized_register(const RegisterTemplate& tmpl, std::span<const double> params,
                               const DeviceConstraints& constraints) {
    if (static_cast<int>(params.size()) != tmpl.arity())
        throw std::invalid_argument("parametrized_register: wrong parameter count for " + tmpl.name);
    Register reg;
    reg.positions_um = tmpl.build(params);
    if (!reg.satisfies(constraints)) {
        std::ostringstream msg;
        msg << "template '" << tmpl.name << "' violates device constraints: min distance "
            << reg.min_pairwise_distance() << " um (needs >= " << constraints.min_distance_um
            << "), centroid radius " << reg.max_centroid_distance() << " um (needs <= "
            << constraints.max_radius_um << ")";
        throw EmbeddingInfeasible(msg.str());
    }
    return reg;
}

RegisterTemplate concentric_triangle_template(double radius_lo, double radius_hi) {
    RegisterTemplate tmpl;
    tmpl.name = "concentric_triangles";
    tmpl.bounds = {{radius_lo, radius_hi}, {radius_lo, radius_hi}};
    tmpl.build = [](std::span<const double> params) {
        const double outer = params[0];
        const double inner = params[1];
        const double pi = 3.14159265358979323846;
        std::vector<Vec2> pos(7);
        for (int v = 0; v < 3; ++v) {
            const double angle = pi / 2.0 + 2.0 * pi * v / 3.0;
            pos[v] = {inner * std::cos(angle), inner * std::sin(angle)};
        }
        for (int v = 0; v < 3; ++v) {
            const double angle = pi / 6.0 + 2.0 * pi * v / 3.0;  // rotated 60 degrees
            pos[3 + v] = {outer * std::cos(angle), outer * std::sin(angle)};
        }
        pos[6] = {0.0, 0.0};
        return pos;
    };
    return tmpl;
}

}  // namespace rydopt

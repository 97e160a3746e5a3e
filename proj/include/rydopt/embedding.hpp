#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydopt/graph.hpp"
#include "rydopt/register.hpp"

namespace rydopt {

// Raised when a layout cannot be scaled into the device constraints; the
// caller should try a different embedding strategy.
class EmbeddingInfeasible : public std::runtime_error {
  public:
    explicit EmbeddingInfeasible(const std::string& what) : std::runtime_error(what) {}
};

enum class LayoutKind { Spring, RandomWeightSpring, WeightedSpring, InverseWeightSpring };

std::string layout_kind_name(LayoutKind kind);
LayoutKind layout_kind_from_name(const std::string& name);
inline constexpr std::array<LayoutKind, 4> kAllLayoutKinds = {
    LayoutKind::Spring, LayoutKind::RandomWeightSpring, LayoutKind::WeightedSpring,
    LayoutKind::InverseWeightSpring};

struct LayoutParams {
    int iterations = 100;
    double area = 1.0;
    double scale = 40.0;
    std::uint64_t seed = 0;
};

// Edge weights aligned with Graph::edges. Spring = unit weights,
// RandomWeightSpring = iid Uniform(0.1, 2.0), WeightedSpring = N(i)N(j),
// InverseWeightSpring = -N(i)N(j).
std::vector<double> layout_weights(const Graph& g, LayoutKind kind, std::uint64_t seed);

struct FrResult {
    std::vector<Vec2> positions;
    std::vector<double> energy_trace;  // total force energy after each iteration
};

// Fruchterman-Reingold force simulation with linear cooling. Stops at the
// iteration cap or once the energy change per iteration falls below 1e-6.
FrResult fr_layout(const Graph& g, std::span<const double> weights, const LayoutParams& p,
                   std::optional<std::vector<Vec2>> initial = std::nullopt);

// Centers positions on their centroid and scales them by the log-midpoint
// of the feasible interval. Throws EmbeddingInfeasible when no scale factor
// can satisfy both constraints.
Register rescale_to_constraints(std::span<const Vec2> positions,
                                const DeviceConstraints& constraints = {});

Register make_register(const Graph& g, LayoutKind kind, const LayoutParams& p,
                       const DeviceConstraints& constraints = {});

// A parametric register family used by the embedding search.
struct RegisterTemplate {
    std::string name;
    std::vector<std::pair<double, double>> bounds;  // search box, one pair per parameter
    std::function<std::vector<Vec2>(std::span<const double>)> build;

    int arity() const { return static_cast<int>(bounds.size()); }
};

// Evaluates the template and validates the device constraints as-is (no
// rescaling: the parameters are the geometry being searched).
Register parametrized_register(const RegisterTemplate& tmpl, std::span<const double> params,
                               const DeviceConstraints& constraints = {});

// Seven atoms: an inner equilateral triangle (vertices 0-2) of circumradius
// r, an outer one (vertices 3-5) of circumradius R rotated 60 degrees, and a
// center atom (vertex 6). Parameters are (R, r).
RegisterTemplate concentric_triangle_template(double radius_lo = 4.0, double radius_hi = 25.0);

}  // namespace rydopt

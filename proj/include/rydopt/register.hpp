#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rydopt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Hardware feasibility bounds for a register: a minimum pairwise atom
// distance and a maximum distance from the register centroid.
struct DeviceConstraints {
    double min_distance_um = 4.0;
    double max_radius_um = 50.0;
};

// 2D atom positions in micrometers, one atom per graph vertex.
struct Register {
    std::vector<Vec2> positions_um;

    int size() const { return static_cast<int>(positions_um.size()); }
    Vec2 centroid() const;
    double min_pairwise_distance() const;   // +inf for fewer than two atoms
    double max_centroid_distance() const;
    bool satisfies(const DeviceConstraints& c) const;
};

nlohmann::json register_to_json(const Register& reg);
Register register_from_json(const nlohmann::json& j);
std::string register_to_string(const Register& reg);

}  // namespace rydopt

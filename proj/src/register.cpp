#include "rydopt/register.hpp"

#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rydopt {

Vec2 Register::centroid() const {
    Vec2 c;
    if (positions_um.empty()) return c;
    for (const auto& p : positions_um) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= static_cast<double>(positions_um.size());
    c.y /= static_cast<double>(positions_um.size());
    return c;
}

double Register::min_pairwise_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < positions_um.size(); ++i)
        for (std::size_t j = i + 1; j < positions_um.size(); ++j)
            best = std::min(best, distance(positions_um[i], positions_um[j]));
    return best;
}

double Register::max_centroid_distance() const {
    const Vec2 c = centroid();
    double worst = 0.0;
    for (const auto& p : positions_um) worst = std::max(worst, distance(p, c));
    return worst;
}

bool Register::satisfies(const DeviceConstraints& c) const {
    return min_pairwise_distance() >= c.min_distance_um &&
           max_centroid_distance() <= c.max_radius_um;
}

nlohmann::json register_to_json(const Register& reg) {
    nlohmann::json pos = nlohmann::json::array();
    for (const auto& p : reg.positions_um) pos.push_back({p.x, p.y});
    return nlohmann::json{{"positions_um", pos}};
}

Register register_from_json(const nlohmann::json& j) {
    if (!j.contains("positions_um")) throw std::invalid_argument("register json: missing positions_um");
    Register reg;
    for (const auto& p : j.at("positions_um"))
        reg.positions_um.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return reg;
}

std::string register_to_string(const Register& reg) { return register_to_json(reg).dump(); }

}  // namespace rydopt

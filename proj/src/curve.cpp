#include "parop/curve.hpp"

#include <numeric>
#include <set>

namespace parop {

const MarkedCurve& validate_curve(const MarkedCurve& curve) {
    require(curve.genus >= 0, "InvalidArgument", "genus must be non-negative");
    if (curve.genus == 0)
        require(curve.points.size() >= 3, "GenusZeroTooFewPoints",
                "a genus-0 curve needs at least 3 marked points, got " +
                    std::to_string(curve.points.size()));
    std::set<std::string> labels;
    std::vector<cplx> coords;
    for (const auto& p : curve.points) {
        require(p.level >= 2, "LevelTooSmall",
                "level at '" + p.label + "' must be >= 2, got " + std::to_string(p.level));
        require(labels.insert(p.label).second, "DuplicateLabel",
                "duplicate point label '" + p.label + "'");
        if (p.coordinate) {
            for (const auto& c : coords)
                require(c != *p.coordinate, "DuplicateCoordinate",
                        "two marked points share the coordinate at '" + p.label + "'");
            coords.push_back(*p.coordinate);
        }
    }
    return curve;
}

CurvePtr make_curve(int genus, std::vector<MarkedPoint> points) {
    auto curve = std::make_shared<MarkedCurve>(MarkedCurve{genus, std::move(points)});
    validate_curve(*curve);
    return curve;
}

std::int64_t riemann_hurwitz_genus(const MarkedCurve& curve, std::int64_t cover_degree) {
    require(cover_degree >= 1, "InvalidArgument", "cover degree must be positive");
    std::int64_t rhs = cover_degree * (2 * static_cast<std::int64_t>(curve.genus) - 2);
    for (const auto& p : curve.points) {
        require(cover_degree % p.level == 0, "IndivisibleCoverDegree",
                "cover degree " + std::to_string(cover_degree) +
                    " is not divisible by the level " + std::to_string(p.level) + " at '" +
                    p.label + "'");
        rhs += (cover_degree / p.level) * (p.level - 1);
    }
    // rhs = 2 g_Y - 2 must be even and >= -2.
    require(rhs % 2 == 0 && rhs >= -2, "NegativeGenus",
            "ramification data is inconsistent: 2g-2 of the cover would be " +
                std::to_string(rhs));
    return (rhs + 2) / 2;
}

std::int64_t default_cover_degree(const MarkedCurve& curve) {
    std::int64_t d = 1;
    for (const auto& p : curve.points) d = std::lcm(d, static_cast<std::int64_t>(p.level));
    return d;
}

} // namespace parop

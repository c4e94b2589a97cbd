#pragma once

#include <vector>

#include "parop/bundle.hpp"
#include "parop/curve.hpp"

namespace parop::testing {

// Genus-g curve with n points of the given levels; coordinates 0, 1, 2, ...
// so the same curves serve the numerical lab.
inline CurvePtr curve_with_levels(int genus, const std::vector<int>& levels) {
    std::vector<MarkedPoint> pts;
    for (std::size_t i = 0; i < levels.size(); ++i)
        pts.push_back({"x" + std::to_string(i + 1), levels[i],
                       cplx(static_cast<double>(i), 0.0)});
    return make_curve(genus, std::move(pts));
}

inline CurvePtr standard_curve() { return curve_with_levels(0, {5, 5, 5}); }

inline std::vector<Rat> rats(std::initializer_list<const char*> xs) {
    std::vector<Rat> v;
    for (const char* x : xs) v.push_back(Rat::parse(x));
    return v;
}

// Deterministic xorshift for property tests.
struct TestRng {
    std::uint64_t s;
    explicit TestRng(std::uint64_t seed) : s(seed ? seed : 1) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    i64 below(i64 n) { return static_cast<i64>(next() % static_cast<std::uint64_t>(n)); }
};

// Random locally abelian bundle on the curve (weights compatible with the
// levels, small rank and degree).
inline LocallyAbelianBundle random_bundle(const CurvePtr& curve, TestRng& rng) {
    int rank = static_cast<int>(1 + rng.below(4));
    i64 degree = rng.below(9) - 4;
    std::vector<std::vector<Rat>> w;
    for (const auto& p : curve->points) {
        std::vector<Rat> row;
        for (int j = 0; j < rank; ++j) row.push_back(Rat(rng.below(p.level), p.level));
        w.push_back(std::move(row));
    }
    return LocallyAbelianBundle(curve, rank, degree, std::move(w));
}

} // namespace parop::testing

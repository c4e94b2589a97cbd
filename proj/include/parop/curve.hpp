#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parop/error.hpp"

namespace parop {

using cplx = std::complex<double>;

// Marked point on a curve.  The level N >= 2 is the weight denominator at
// this point: every parabolic weight here is an integral multiple of 1/N.
// The coordinate is only needed by the genus-0 numerical lab.
struct MarkedPoint {
    std::string label;
    int level = 2;
    std::optional<cplx> coordinate;

    bool operator==(const MarkedPoint& o) const {
        return label == o.label && level == o.level && coordinate == o.coordinate;
    }
};

struct MarkedCurve {
    int genus = 0;
    std::vector<MarkedPoint> points;

    std::size_t size() const { return points.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i].label == label) return i;
        fail("UnknownPoint", "no marked point labelled '" + label + "'");
    }

    bool operator==(const MarkedCurve& o) const {
        return genus == o.genus && points == o.points;
    }
};

using CurvePtr = std::shared_ptr<const MarkedCurve>;

// Checks the standing hypotheses: genus 0 needs at least three marked
// points, labels unique, coordinates (when present) pairwise distinct,
// all levels >= 2.  Returns the curve unchanged; idempotent.
const MarkedCurve& validate_curve(const MarkedCurve& curve);

// Validating constructor used throughout: bundles keep a shared pointer to
// an immutable curve.
CurvePtr make_curve(int genus, std::vector<MarkedPoint> points);

// Genus of a Galois cover of degree d totally ramified to order N_i over
// each marked point and unramified elsewhere:
//   2 g_Y - 2 = d (2g - 2) + sum_i (d / N_i) (N_i - 1).
// d must be divisible by every level; inconsistent data that would force a
// negative or fractional genus is rejected.
std::int64_t riemann_hurwitz_genus(const MarkedCurve& curve, std::int64_t cover_degree);

// Smallest cover degree making all inertia characters integral.
std::int64_t default_cover_degree(const MarkedCurve& curve);

} // namespace parop

#include <doctest.h>

#include <functional>

#include "parop/curve.hpp"
#include "test_helpers.hpp"

using namespace parop;
using namespace parop::testing;

namespace {

std::string error_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("curve invariants") {
    CHECK_NOTHROW(curve_with_levels(0, {5, 5, 5}));
    CHECK_NOTHROW(curve_with_levels(1, {5}));
    CHECK(error_code([] { curve_with_levels(0, {5, 5}); }) == "GenusZeroTooFewPoints");
    CHECK(error_code([] {
              make_curve(1, {{"a", 5, {}}, {"a", 7, {}}});
          }) == "DuplicateLabel");
    CHECK(error_code([] {
              make_curve(1, {{"a", 5, cplx(0, 0)}, {"b", 7, cplx(0, 0)}});
          }) == "DuplicateCoordinate");
    CHECK(error_code([] { make_curve(1, {{"a", 1, {}}}); }) == "LevelTooSmall");
}

TEST_CASE("validate_curve is idempotent") {
    CurvePtr c = standard_curve();
    const MarkedCurve& once = validate_curve(*c);
    const MarkedCurve& twice = validate_curve(once);
    CHECK(once == twice);
    CHECK(once == *c);
}

TEST_CASE("ramified cover genus") {
    CHECK(riemann_hurwitz_genus(*curve_with_levels(0, {5, 5, 5}), 5) == 2);
    CHECK(riemann_hurwitz_genus(*make_curve(1, {}), 3) == 1);
    CHECK_THROWS_AS(riemann_hurwitz_genus(*curve_with_levels(0, {5, 5, 5}), 4), Error);

    // An unramified cover of the sphere of degree > 1 is impossible.
    CHECK_THROWS_AS(riemann_hurwitz_genus(*make_curve(0, {{"a", 2, {}},
                                                          {"b", 2, {}},
                                                          {"c", 2, {}}}),
                                          2),
                    Error); // odd 2g-2... degree 2, three half-points: rhs = -8+3 odd
}

TEST_CASE("cover genus grows with the degree when the orbifold Euler characteristic is negative") {
    CurvePtr c = curve_with_levels(0, {5, 5, 5});
    // 2g-2 + sum (1 - 1/N) = -2 + 12/5 > 0
    i64 prev = riemann_hurwitz_genus(*c, 5);
    for (i64 d : {10, 15, 20, 25}) {
        i64 g = riemann_hurwitz_genus(*c, d);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("default cover degree is the lcm of the levels") {
    CHECK(default_cover_degree(*curve_with_levels(0, {5, 5, 5})) == 5);
    CHECK(default_cover_degree(*curve_with_levels(1, {5, 7, 9})) == 315);
    CHECK(default_cover_degree(*make_curve(2, {})) == 1);
}

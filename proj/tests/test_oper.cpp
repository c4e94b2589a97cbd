#include <doctest.h>

#include <algorithm>

#include "parop/oper.hpp"
#include "test_helpers.hpp"

using namespace parop;
using namespace parop::testing;

TEST_CASE("gunning bundle invariants") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle e = gunning(c);
    CHECK(e.rank() == 2);
    CHECK(e.degree() == -3);
    CHECK(e.par_deg() == Rat(0));
    CHECK(e.weights_at(0) == rats({"3/5", "2/5"}));

    CurvePtr g2 = curve_with_levels(2, {7});
    LocallyAbelianBundle e2 = gunning(g2);
    CHECK(e2.degree() == -1);
    CHECK(e2.weights_at(0) == rats({"4/7", "3/7"}));
    CHECK(e2.par_deg() == Rat(0));

    CHECK_THROWS_WITH_AS(static_cast<void>(gunning(curve_with_levels(0, {4, 5, 5}))),
                         doctest::Contains("LevelNotOdd"), Error);
    CHECK_THROWS_WITH_AS(static_cast<void>(gunning(curve_with_levels(0, {3, 5, 5}))),
                         doctest::Contains("LevelTooSmallForOper"), Error);
}

TEST_CASE("oper bundle tables") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle r3 = oper_bundle(c, 3);
    CHECK(r3.rank() == 3);
    CHECK(r3.degree() == -3);
    CHECK(r3.weights_at(0) == rats({"4/5", "1/5", "0"}));

    LocallyAbelianBundle r5 = oper_bundle(c, 5);
    CHECK(r5.rank() == 5);
    CHECK(r5.degree() == -6);
    CHECK(r5.weights_at(1) == rats({"4/5", "3/5", "2/5", "1/5", "0"}));

    CHECK(oper_bundle(c, 2) == gunning(c));

    for (int r = 2; r <= 12; ++r) CHECK(det(oper_bundle(c, r)) == trivial_line(c));
}

TEST_CASE("filtration rows match the closed forms") {
    for (int g : {0, 1, 2}) {
        CurvePtr c = curve_with_levels(g, g == 0 ? std::vector<int>{5, 7, 9}
                                                 : std::vector<int>{5, 11});
        for (int r = 2; r <= 12; ++r) {
            OperFiltration f = oper_filtration(c, r);
            REQUIRE(static_cast<int>(f.rows.size()) == r);
            Rat acc(0);
            for (const auto& row : f.rows) {
                CHECK(row.rank == row.j);
                CHECK(row.graded.par_deg() ==
                      graded_par_deg_closed_form(*c, r, row.j));
                acc += row.graded.par_deg();
                CHECK(row.par_degree == acc);
                CHECK(row.par_degree == filtration_par_deg_closed_form(*c, r, row.j));
            }
            CHECK(f.rows.back().par_degree == Rat(0));
            // top row carries the symmetric power's data, and the graded
            // weights merge to the symmetric power's weight multisets
            LocallyAbelianBundle top = oper_bundle(c, r);
            CHECK(f.rows.back().underlying_degree == top.degree());
            for (std::size_t i = 0; i < c->size(); ++i) {
                std::vector<Rat> merged;
                for (const auto& row : f.rows) merged.push_back(row.graded.weights_at(i)[0]);
                std::sort(merged.begin(), merged.end(),
                          [](const Rat& a, const Rat& b) { return b < a; });
                CHECK(merged == top.weights_at(i));
            }
        }
    }
}

TEST_CASE("closed-form spot values") {
    CurvePtr c = standard_curve();
    CHECK(filtration_par_deg_closed_form(*c, 4, 2) == Rat(4, 5));
    CHECK(filtration_par_deg_closed_form(*c, 4, 4) == Rat(0));
    CHECK(graded_par_deg_closed_form(*c, 4, 1) == Rat(3, 5));
}

TEST_CASE("graded quotients agree with tensor powers of the two natural lines") {
    CurvePtr c = curve_with_levels(1, {5, 7});
    LocallyAbelianBundle sub = gunning_subline(c);
    LocallyAbelianBundle quot = gunning_quotient_line(c);
    for (int r = 2; r <= 8; ++r) {
        OperFiltration f = oper_filtration(c, r);
        for (const auto& row : f.rows) {
            LocallyAbelianBundle expect =
                tensor(line_power(sub, r - row.j), line_power(quot, row.j - 1));
            CHECK(row.graded == expect);
        }
    }
}

TEST_CASE("xi degrees") {
    CurvePtr c = standard_curve();
    CHECK(xi_degree(*c, 6, 2) == -2);
    CHECK(xi_degree(*c, 6, 5) == -2);
    CHECK(xi_degree(*c, 4, 3) == -3); // below every level: floors vanish

    // against the parabolic power of the quotient line
    for (int g : {0, 1, 3}) {
        CurvePtr cc = curve_with_levels(g, g == 0 ? std::vector<int>{5, 5, 7}
                                                  : std::vector<int>{9});
        LocallyAbelianBundle quot = gunning_quotient_line(cc);
        for (int k = 2; k <= 11; ++k)
            CHECK(xi_degree(*cc, 12, k) == line_power(quot, 2 * k).degree());
    }
}

TEST_CASE("transversality report") {
    CurvePtr c = standard_curve();
    TransversalityReport rep = transversality_report(c, 6);
    CHECK(rep.pass);
    REQUIRE(rep.degree_rows.size() == 4);
    // k = 5 picks up floor(5/5) = 1 at each point: xi = -5 + 3 = -2, so the
    // twisted degree is -2 + 1 = -1.
    i64 expected[] = {-1, -2, -3, -1};
    for (int i = 0; i < 4; ++i) CHECK(rep.degree_rows[i].xi_twisted == expected[i]);
    for (bool pos : rep.filtration_positive) CHECK(pos);

    CHECK(transversality_report(c, 2).pass); // vacuous k range

    // g = 1 with an empty marked divisor is the degenerate case: the degree
    // test is an equality, not a strict inequality, and the report says so.
    CurvePtr torus = make_curve(1, {});
    CHECK_FALSE(transversality_report(torus, 4).pass);
}

TEST_CASE("second fundamental form target") {
    CurvePtr c = standard_curve();
    for (int r = 2; r <= 9; ++r)
        for (int j = 1; j <= r - 1; ++j) {
            LocallyAbelianBundle t = second_fundamental_target(c, r, j);
            CHECK(t.degree() == 0);
            for (std::size_t i = 0; i < c->size(); ++i)
                CHECK(t.weights_at(i)[0] == Rat(1, 5));
        }
    CurvePtr mixed = curve_with_levels(2, {7, 11});
    LocallyAbelianBundle t = second_fundamental_target(mixed, 5, 3);
    CHECK(t.degree() == 0);
    CHECK(t.weights_at(0)[0] == Rat(1, 7));
    CHECK(t.weights_at(1)[0] == Rat(1, 11));
}

TEST_CASE("residue spectra") {
    CurvePtr c = standard_curve();
    CHECK(residue_spectrum(c, 2, "x1") == rats({"3/5", "2/5"}));
    CHECK(residue_spectrum(c, 3, "x2") == rats({"4/5", "1/5", "0"}));
    // determinant condition: the spectrum sums to an integer
    for (int r = 2; r <= 10; ++r) {
        Rat sum(0);
        for (const auto& w : residue_spectrum(c, r, "x3")) sum += w;
        CHECK(sum.is_integer());
    }
}

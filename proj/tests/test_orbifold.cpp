#include <doctest.h>

#include "parop/orbifold.hpp"
#include "parop/oper.hpp"
#include "test_helpers.hpp"

using namespace parop;
using namespace parop::testing;

TEST_CASE("mirror of the theta line") {
    CurvePtr c = standard_curve();
    OrbifoldBundle o = to_orbifold(gunning_subline(c), 5);
    REQUIRE(o.components().size() == 1);
    CHECK(o.components()[0].y_degree == 1);
    CHECK(o.components()[0].characters == std::vector<int>{2, 2, 2});

    OrbifoldBundle t = to_orbifold(trivial_line(c), 5);
    CHECK(t.components()[0].y_degree == 0);
    CHECK(t.components()[0].characters == std::vector<int>{0, 0, 0});

    OrbifoldBundle e = to_orbifold(split_gunning(c), 5);
    REQUIRE(e.components().size() == 2);
    CHECK(e.components()[0].y_degree == 1);
    CHECK(e.components()[1].y_degree == -1);
}

TEST_CASE("pushforward round trips") {
    CurvePtr c = standard_curve();
    SplitBundle s = split_gunning(c);
    SplitBundle back = from_orbifold(to_orbifold(s, 5));
    CHECK(back.assemble() == s.assemble());

    // y-degree of a component is the cover degree times its parabolic degree
    TestRng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        i64 deg = rng.below(9) - 4;
        std::vector<std::vector<Rat>> w;
        for (const auto& p : c->points) w.push_back({Rat(rng.below(p.level), p.level)});
        LocallyAbelianBundle line(c, 1, deg, std::move(w));
        OrbifoldBundle o = to_orbifold(line, 10);
        CHECK(Rat(o.components()[0].y_degree) == Rat(10) * line.par_deg());
        CHECK(from_orbifold(o).assemble() == line);
    }

    // invalid upstairs data is rejected
    OrbifoldBundle bad(c, 5, {{2, {0, 0, 0}}});
    CHECK_THROWS_AS(from_orbifold(bad), Error);
    CHECK_THROWS_AS(bad.validate(), Error);

    // and the round trip in the other direction fixes valid upstairs data
    OrbifoldBundle o(c, 5, {{7, {1, 4, 2}}, {-3, {3, 0, 4}}});
    o.validate();
    OrbifoldBundle back2 = to_orbifold(from_orbifold(o), 5);
    REQUIRE(back2.components().size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(back2.components()[k].y_degree == o.components()[k].y_degree);
        CHECK(back2.components()[k].characters == o.components()[k].characters);
    }
}

TEST_CASE("upstairs tensor pushes to the parabolic tensor") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle sub = gunning_subline(c);
    OrbifoldBundle l = to_orbifold(sub, 5);
    OrbifoldBundle sq = orb_tensor(l, l);
    CHECK(sq.components()[0].y_degree == 2);
    CHECK(sq.components()[0].characters == std::vector<int>{4, 4, 4});
    LocallyAbelianBundle down = from_orbifold(sq).assemble();
    CHECK(down.degree() == -2);
    CHECK(down == tensor(sub, sub));

    CHECK(from_orbifold(orb_dual(orb_dual(l))).assemble() == sub);

    OrbifoldBundle e = to_orbifold(split_gunning(c), 5);
    CHECK(from_orbifold(orb_sym(e, 2)).assemble() == sym_pow(gunning(c), 2));
    CHECK(from_orbifold(orb_det(e)).assemble() == trivial_line(c));
}

TEST_CASE("theta characteristic degree test") {
    ThetaCheckReport r1 = theta_characteristic_check(standard_curve(), 5);
    CHECK(r1.cover_genus == 2);
    CHECK(r1.theta_degree_upstairs == 1);
    CHECK(r1.pass);

    ThetaCheckReport r2 = theta_characteristic_check(curve_with_levels(2, {5}), 5);
    CHECK(r2.theta_degree_upstairs == 7);
    CHECK(2 * r2.cover_genus - 2 == 14);
    CHECK(r2.pass);

    // no marked points: deg of a theta characteristic upstairs is g_Y - 1
    ThetaCheckReport r3 = theta_characteristic_check(make_curve(3, {}), 4);
    CHECK(r3.pass);
}

TEST_CASE("randomized cross-check of the two computation paths") {
    OracleReport rep = oracle_check(standard_curve(), 42, 300);
    CHECK(rep.checked == 300);
    CHECK(rep.pass());

    OracleReport rep2 = oracle_check(curve_with_levels(2, {5, 7, 9, 11}), 7, 150);
    CHECK(rep2.pass());

    // determinism: the same seed replays the same expressions
    OracleReport a = oracle_check(standard_curve(), 9, 50);
    OracleReport b = oracle_check(standard_curve(), 9, 50);
    CHECK(a.checked == b.checked);
}

TEST_CASE("expression evaluation agrees on hand-picked cases") {
    CurvePtr c = standard_curve();
    OracleExpr sym3;
    sym3.kind = OracleExpr::Kind::Sym;
    sym3.sym_k = 3;
    sym3.children.push_back(OracleExpr{});
    CHECK(eval_parabolic(sym3, c) == eval_via_orbifold(sym3, c, 5));

    OracleExpr det_e;
    det_e.kind = OracleExpr::Kind::Det;
    det_e.children.push_back(OracleExpr{});
    CHECK(eval_parabolic(det_e, c) == trivial_line(c));
    CHECK(eval_via_orbifold(det_e, c, 5) == trivial_line(c));

    OracleExpr dual_triv;
    dual_triv.kind = OracleExpr::Kind::Dual;
    dual_triv.children.push_back(OracleExpr{OracleExpr::Kind::Trivial, 0, {}});
    CHECK(eval_parabolic(dual_triv, c) == trivial_line(c));
    CHECK(eval_via_orbifold(dual_triv, c, 5) == trivial_line(c));
}

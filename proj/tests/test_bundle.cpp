#include <doctest.h>

#include <algorithm>

#include "parop/bundle.hpp"
#include "parop/oper.hpp"
#include "test_helpers.hpp"

using namespace parop;
using namespace parop::testing;

namespace {

// Independent degree oracles for the low symmetric powers of the rank-2
// bundle, computed from the underlying split E = L + L^*(-S) and the
// defining elementary modifications, never through the parabolic calculus:
//   Sym^2: deg Sym^2(E) + 3n - n   (twist by S, one-dimensional cokernel per point)
//   Sym^3: deg Sym^3(E) + 4n       (plain twist by S)
//   Sym^4: deg Sym^4(E) + 10n - 2n (twist by 2S, two-dimensional cokernel per point)
// with deg L = g-1 and deg L^*(-S) = 1-g-n.
i64 sym_underlying_degree_oracle(int k, i64 g, i64 n) {
    i64 degL = g - 1;
    i64 degQ = 1 - g - n;
    i64 base = 0;
    for (int j = 0; j <= k; ++j) base += (k - j) * degL + j * degQ;
    switch (k) {
        case 2: return base + 3 * n - n;
        case 3: return base + 4 * n;
        case 4: return base + 10 * n - 2 * n;
        default: FAIL("oracle only covers k = 2, 3, 4");
    }
    return 0;
}

} // namespace

TEST_CASE("parabolic degree bookkeeping") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle e = gunning(c);
    CHECK(e.degree() == -3);
    CHECK(e.par_deg() == Rat(0));

    CHECK(trivial_line(c).par_deg() == Rat(0));

    LocallyAbelianBundle sub = gunning_subline(c);
    CHECK(sub.degree() == -1);
    CHECK(sub.par_deg() == Rat(1, 5));
}

TEST_CASE("dual") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle sub = gunning_subline(c);
    LocallyAbelianBundle d = dual(sub);
    CHECK(d.degree() == -2);
    for (int i = 0; i < 3; ++i) CHECK(d.weights_at(i)[0] == Rat(3, 5));
    CHECK(d == gunning_quotient_line(c));

    CHECK(dual(trivial_line(c)) == trivial_line(c));

    TestRng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        LocallyAbelianBundle v = random_bundle(c, rng);
        CHECK(dual(dual(v)) == v);
        CHECK(dual(v).par_deg() == -v.par_deg());
    }
}

TEST_CASE("tensor squares the theta line to the canonical bundle") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle sub = gunning_subline(c);
    LocallyAbelianBundle sq = tensor(sub, sub);
    CHECK(sq.degree() == -2); // = deg K at genus 0
    for (int i = 0; i < 3; ++i) CHECK(sq.weights_at(i)[0] == Rat(4, 5));

    LocallyAbelianBundle fourth = line_power(sub, 4);
    CHECK(fourth.degree() == -1);
    for (int i = 0; i < 3; ++i) CHECK(fourth.weights_at(i)[0] == Rat(3, 5));

    TestRng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        LocallyAbelianBundle v = random_bundle(c, rng);
        CHECK(tensor(v, trivial_line(c)) == v);
    }
}

TEST_CASE("tensor is commutative and associative in canonical form") {
    CurvePtr c = curve_with_levels(1, {5, 9});
    TestRng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        LocallyAbelianBundle a = random_bundle(c, rng);
        LocallyAbelianBundle b = random_bundle(c, rng);
        LocallyAbelianBundle d = random_bundle(c, rng);
        CHECK(tensor(a, b) == tensor(b, a));
        CHECK(tensor(tensor(a, b), d) == tensor(a, tensor(b, d)));
        CHECK(tensor(a, b).par_deg() ==
              Rat(b.rank()) * a.par_deg() + Rat(a.rank()) * b.par_deg());
    }
}

TEST_CASE("symmetric powers of the rank-2 bundle against the defining-sequence oracles") {
    for (i64 g : {0, 1, 2}) {
        for (i64 n : {3, 4}) {
            CurvePtr c = curve_with_levels(static_cast<int>(g), std::vector<int>(n, 5));
            LocallyAbelianBundle e = gunning(c);
            for (int k : {2, 3, 4}) {
                LocallyAbelianBundle s = sym_pow(e, k);
                CHECK(s.rank() == k + 1);
                CHECK(s.degree() == sym_underlying_degree_oracle(k, g, n));
            }
        }
    }
}

TEST_CASE("symmetric power weight tables at c = 2") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle e = gunning(c);

    LocallyAbelianBundle s2 = sym_pow(e, 2);
    CHECK(s2.rank() == 3);
    CHECK(s2.degree() == -3);
    CHECK(s2.weights_at(0) == rats({"4/5", "1/5", "0"}));

    LocallyAbelianBundle s3 = sym_pow(e, 3);
    CHECK(s3.rank() == 4);
    CHECK(s3.degree() == -6);
    CHECK(s3.weights_at(0) == rats({"4/5", "3/5", "2/5", "1/5"}));

    LocallyAbelianBundle s4 = sym_pow(e, 4);
    CHECK(s4.rank() == 5);
    CHECK(s4.degree() == -6);
    CHECK(s4.weights_at(0) == rats({"4/5", "3/5", "2/5", "1/5", "0"}));

    CHECK(sym_pow(e, 0) == trivial_line(c));
    CHECK(sym_pow(e, 1) == e);
}

TEST_CASE("sym_pow par-deg scaling and rank on random bundles") {
    CurvePtr c = curve_with_levels(0, {5, 7, 9});
    TestRng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        LocallyAbelianBundle v = random_bundle(c, rng);
        for (int k = 0; k <= 3; ++k) {
            LocallyAbelianBundle s = sym_pow(v, k);
            // rank C(r+k-1, k)
            i64 expect_rank = 1;
            for (int j = 1; j <= k; ++j)
                expect_rank = expect_rank * (v.rank() + j - 1) / j;
            CHECK(s.rank() == expect_rank);
            CHECK(s.par_deg() == Rat(expect_rank) * Rat(k, v.rank()) * v.par_deg());
        }
    }
}

TEST_CASE("determinant") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle e = gunning(c);
    CHECK(det(e) == trivial_line(c));
    CHECK(det(sym_pow(e, 3)) == trivial_line(c));
    LocallyAbelianBundle sub = gunning_subline(c);
    CHECK(det(sub) == sub);

    TestRng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        LocallyAbelianBundle v = random_bundle(c, rng);
        CHECK(det(v).par_deg() == v.par_deg());
        LocallyAbelianBundle w = random_bundle(c, rng);
        CHECK(det(tensor(v, w)) ==
              tensor(line_power(det(v), w.rank()), line_power(det(w), v.rank())));
    }
}

TEST_CASE("hom") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle sub = gunning_subline(c);
    // Hom(L, L^{-1}) is the square of the quotient line = TX(-S) with
    // weight 1/5: underlying degree -(2g-2+n) = -1 here.
    LocallyAbelianBundle h = hom(sub, dual(sub));
    CHECK(h.degree() == -1);
    for (int i = 0; i < 3; ++i) CHECK(h.weights_at(i)[0] == Rat(1, 5));
    // equals the square of the quotient line
    CHECK(h == line_power(gunning_quotient_line(c), 2));

    TestRng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        LocallyAbelianBundle v = random_bundle(c, rng);
        CHECK(hom(v, v).par_deg() == Rat(0));
        CHECK(hom(trivial_line(c), v) == v);
    }
}

TEST_CASE("twist") {
    CurvePtr c = standard_curve();
    CHECK(twist(trivial_line(c), 1).degree() == 3);
    LocallyAbelianBundle qd = line_power(gunning_quotient_line(c), -1);
    CHECK(twist(qd, -1).degree() == qd.degree() - 3);
    TestRng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        LocallyAbelianBundle v = random_bundle(c, rng);
        CHECK(twist(twist(v, 1), -1) == v);
    }
}

TEST_CASE("flag tables") {
    CurvePtr c = standard_curve();
    LocallyAbelianBundle e = gunning(c);
    auto rows = flag_table(e, "x1");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == FlagRow{Rat(3, 5), 1});
    CHECK(rows[1] == FlagRow{Rat(2, 5), 1});

    auto rows4 = flag_table(sym_pow(e, 4), "x2");
    REQUIRE(rows4.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(rows4[i] == FlagRow{Rat(4 - i, 5), 1});

    LocallyAbelianBundle merged(c, 2, 0, {{Rat(1, 5), Rat(1, 5)},
                                          {Rat(1, 5), Rat(1, 5)},
                                          {Rat(1, 5), Rat(1, 5)}});
    auto rows_m = flag_table(merged, "x3");
    REQUIRE(rows_m.size() == 1);
    CHECK(rows_m[0] == FlagRow{Rat(1, 5), 2});

    CHECK_THROWS_AS(flag_table(e, "nope"), Error);
}

TEST_CASE("euler characteristic and genus-0 section counts") {
    CurvePtr c = standard_curve();
    CHECK(euler_characteristic(trivial_line(c)) == 1);
    CHECK(euler_characteristic(gunning(c)) == -1);
    CurvePtr g2 = curve_with_levels(2, {5});
    CHECK(euler_characteristic(weightless_line(g2, 2)) == 1); // chi(K) = g-1

    CHECK(h0_line_genus0(*c, -1) == 0);
    CHECK(h0_line_genus0(*c, 0) == 1);
    CHECK(h0_line_genus0(*c, 3) == 4);
    CHECK_THROWS_AS(h0_line_genus0(*g2, 0), Error);
}

TEST_CASE("connection existence criterion") {
    CurvePtr c = standard_curve();
    CHECK(connection_exists(gunning(c), {}).exists);
    CHECK_FALSE(connection_exists(gunning_subline(c), {}).exists);
    CHECK(connection_exists(trivial_line(c), {}).exists);

    // The split presentation of the rank-2 bundle has summands of parabolic
    // degree +1/5 and -1/5, so as a split bundle it admits no connection.
    auto rep = connection_exists(gunning(c), {gunning_subline(c), gunning_quotient_line(c)});
    CHECK_FALSE(rep.exists);
    CHECK(rep.total_par_deg == Rat(0));
    REQUIRE(rep.summand_par_degs.size() == 2);
    CHECK(rep.summand_par_degs[0] + rep.summand_par_degs[1] == Rat(0));

    CHECK_THROWS_AS(connection_exists(gunning(c), {gunning_subline(c), gunning_subline(c)}),
                    Error);
}

TEST_CASE("rank-2 tensor squares split as symmetric square plus determinant") {
    // V (x) V = Sym^2 V + det V for rank 2: degrees add and the per-point
    // weight multisets merge.  Cross-checks the floor bookkeeping of
    // sym_pow against tensor's.
    CurvePtr c = curve_with_levels(1, {5, 7, 9});
    TestRng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        i64 degree = rng.below(9) - 4;
        std::vector<std::vector<Rat>> w;
        for (const auto& p : c->points)
            w.push_back({Rat(rng.below(p.level), p.level), Rat(rng.below(p.level), p.level)});
        LocallyAbelianBundle v(c, 2, degree, std::move(w));
        LocallyAbelianBundle square = tensor(v, v);
        LocallyAbelianBundle s = sym_pow(v, 2);
        LocallyAbelianBundle d = det(v);
        CHECK(square.degree() == s.degree() + d.degree());
        for (std::size_t i = 0; i < c->size(); ++i) {
            std::vector<Rat> merged = s.weights_at(i);
            merged.push_back(d.weights_at(i)[0]);
            std::sort(merged.begin(), merged.end(), [](const Rat& a, const Rat& b) { return b < a; });
            CHECK(merged == square.weights_at(i));
        }
    }
}

TEST_CASE("every output weight stays in [0,1) with denominator dividing the level") {
    CurvePtr c = curve_with_levels(1, {5, 9, 15});
    TestRng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        LocallyAbelianBundle a = random_bundle(c, rng);
        LocallyAbelianBundle b = random_bundle(c, rng);
        for (const auto& v : {tensor(a, b), dual(a), sym_pow(a, 2), det(a), hom(a, b)}) {
            for (std::size_t i = 0; i < c->size(); ++i)
                for (const auto& w : v.weights_at(i)) {
                    CHECK(Rat(0) <= w);
                    CHECK(w < Rat(1));
                    CHECK((w * Rat(c->points[i].level)).is_integer());
                }
        }
    }
}

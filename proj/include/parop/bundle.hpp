#pragma once

#include <cstdint>
#include <vector>

#include "parop/curve.hpp"
#include "parop/rational.hpp"

namespace parop {

using i64 = std::int64_t;

// One row of a quasiparabolic flag: a weight together with the dimension of
// the graded piece carrying it.  Rows at a point are sorted by strictly
// decreasing weight.
struct FlagRow {
    Rat weight;
    int multiplicity = 1;

    bool operator==(const FlagRow& o) const {
        return weight == o.weight && multiplicity == o.multiplicity;
    }
};

// Locally abelian parabolic bundle: a rank, the degree of the underlying
// bundle, and at every marked point a multiset of exactly `rank` weights in
// [0,1) whose denominators divide the point's level.  The flag is the one
// induced by sorting the weights; no extension data is carried.  This is
// the canonical form in which tensor products, duals, symmetric powers and
// determinants are exactly computable.
class LocallyAbelianBundle {
public:
    // weights[i] lists the weights at curve point i in any order; they are
    // canonicalised (sorted descending) on construction.
    LocallyAbelianBundle(CurvePtr curve, int rank, i64 degree,
                         std::vector<std::vector<Rat>> weights);

    const MarkedCurve& curve() const { return *curve_; }
    const CurvePtr& curve_ptr() const { return curve_; }
    int rank() const { return rank_; }
    i64 degree() const { return degree_; }
    const std::vector<Rat>& weights_at(std::size_t point) const { return weights_[point]; }

    // Underlying degree plus the sum of all weights.
    Rat par_deg() const;

    bool operator==(const LocallyAbelianBundle& o) const {
        return *curve_ == *o.curve_ && rank_ == o.rank_ && degree_ == o.degree_ &&
               weights_ == o.weights_;
    }
    bool operator!=(const LocallyAbelianBundle& o) const { return !(*this == o); }

private:
    CurvePtr curve_;
    int rank_;
    i64 degree_;
    std::vector<std::vector<Rat>> weights_; // per point, sorted descending
};

// O_X with no nonzero weights.
LocallyAbelianBundle trivial_line(CurvePtr curve);

// Parabolic line with zero weights and the given underlying degree.  Used
// for K_X, K_X(S) and other weightless twists.
LocallyAbelianBundle weightless_line(CurvePtr curve, i64 degree);

// Nonzero weights flip to 1-w, zero weights stay zero;
// degree |-> -degree - #{nonzero weights}.  Involution; negates par_deg.
LocallyAbelianBundle dual(const LocallyAbelianBundle& v);

// Weight multisets combine over all pairs, (a+b) mod 1, with each floor
// carried into the underlying degree:
//   deg = deg(A) rk(B) + deg(B) rk(A) + sum_i sum_pairs floor(a+b).
LocallyAbelianBundle tensor(const LocallyAbelianBundle& a, const LocallyAbelianBundle& b);

// k-th symmetric power: one weight per size-k multiset of the fibre slots,
// rank C(r+k-1, k), degree fixed by
//   par_deg(Sym^k V) = C(r+k-1, k) * (k/r) * par_deg(V).
LocallyAbelianBundle sym_pow(const LocallyAbelianBundle& v, int k);

// Determinant line: weight (sum of weights) mod 1 per point, floors into
// the degree.  Preserves par_deg.
LocallyAbelianBundle det(const LocallyAbelianBundle& v);

// Hom(A, B) = B (x) A^*.
LocallyAbelianBundle hom(const LocallyAbelianBundle& a, const LocallyAbelianBundle& b);

// Twist by the m-th power of the marked divisor: degree += m * n * rank,
// weights unchanged.
LocallyAbelianBundle twist(const LocallyAbelianBundle& v, i64 m);

// m-th parabolic power of a line bundle, m any integer (negative powers go
// through the dual).
LocallyAbelianBundle line_power(const LocallyAbelianBundle& line, i64 m);

// Weights at the point, merged into strictly-decreasing rows with
// multiplicities: the shape of the quasiparabolic flag.
std::vector<FlagRow> flag_table(const LocallyAbelianBundle& v, const std::string& label);

// Riemann-Roch for the underlying bundle: deg + rank (1 - g).
i64 euler_characteristic(const LocallyAbelianBundle& v);

// Exact section count of a degree-d line bundle on the projective line.
i64 h0_line_genus0(const MarkedCurve& curve, i64 d);

struct ConnectionReport {
    bool exists = false;
    Rat total_par_deg;
    std::vector<Rat> summand_par_degs;
    std::string detail;
};

// A parabolic connection exists iff every direct summand has parabolic
// degree zero.  An empty summand list declares the bundle indecomposable,
// so only par_deg(V) = 0 is required.  Declared summands must add up to V.
ConnectionReport connection_exists(const LocallyAbelianBundle& v,
                                   const std::vector<LocallyAbelianBundle>& declared_summands);

} // namespace parop

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parop/bundle.hpp"

namespace parop {

// A bundle on the degree-d Galois cover is mirrored here purely numerically:
// per line component, its total degree upstairs and the inertia character
// k_i in [0, N_i) at each ramification locus.  No cover is ever constructed;
// these numbers are all the pushforward correspondence consumes.
struct OrbifoldComponent {
    i64 y_degree = 0;
    std::vector<int> characters;
};

class OrbifoldBundle {
public:
    OrbifoldBundle(CurvePtr curve, i64 cover_degree, std::vector<OrbifoldComponent> components);

    const MarkedCurve& curve() const { return *curve_; }
    const CurvePtr& curve_ptr() const { return curve_; }
    i64 cover_degree() const { return cover_degree_; }
    const std::vector<OrbifoldComponent>& components() const { return components_; }

    // Verifies that each component pushes forward to an integral degree
    // downstairs; raises NonIntegralPushforward otherwise.
    void validate() const;

private:
    CurvePtr curve_;
    i64 cover_degree_;
    std::vector<OrbifoldComponent> components_;
};

// A bundle presented as an ordered direct sum of parabolic lines.  This is
// the form in which Gunning-derived bundles cross to the cover side: each
// line has a well-defined degree, so its mirror has a well-defined degree
// upstairs.  Assembling forgets the decomposition.
struct SplitBundle {
    CurvePtr curve;
    std::vector<LocallyAbelianBundle> lines;

    LocallyAbelianBundle assemble() const;
};

SplitBundle split_gunning(CurvePtr curve);

// Mirrors a split bundle: per line, character k_i = w_i N_i and upstairs
// degree d * par_deg(line).
OrbifoldBundle to_orbifold(const SplitBundle& v, i64 cover_degree);
OrbifoldBundle to_orbifold(const LocallyAbelianBundle& line, i64 cover_degree);

// Inverse: weight k_i/N_i, downstairs degree (y - sum_i k_i d/N_i) / d.
SplitBundle from_orbifold(const OrbifoldBundle& o);

OrbifoldBundle orb_tensor(const OrbifoldBundle& a, const OrbifoldBundle& b);
OrbifoldBundle orb_dual(const OrbifoldBundle& a);
OrbifoldBundle orb_sym(const OrbifoldBundle& a, int k);
OrbifoldBundle orb_det(const OrbifoldBundle& a);

struct ThetaCheckReport {
    i64 cover_degree = 0;
    i64 cover_genus = 0;
    i64 theta_degree_upstairs = 0; // degree of the mirror of the subline
    bool pass = false;             // 2 * theta degree == 2 g_Y - 2
};

// The mirror of the Gunning subline is a theta characteristic upstairs:
// twice its degree equals 2 g_Y - 2, with g_Y computed independently by
// Riemann-Hurwitz.
ThetaCheckReport theta_characteristic_check(CurvePtr curve, i64 cover_degree);

// Expression tree over the bundle operations, used by the randomized
// cross-check driver and serialised verbatim into failure artifacts.
struct OracleExpr {
    enum class Kind { Gunning, SubLine, QuotientLine, Trivial, Tensor, Dual, Sym, Det };
    Kind kind = Kind::Gunning;
    int sym_k = 0;
    std::vector<OracleExpr> children;

    std::string to_string() const;
};

// Evaluates the expression through the parabolic calculus.
LocallyAbelianBundle eval_parabolic(const OracleExpr& e, const CurvePtr& curve);

// Evaluates the same expression upstairs and pushes the result back down.
LocallyAbelianBundle eval_via_orbifold(const OracleExpr& e, const CurvePtr& curve,
                                       i64 cover_degree);

struct OracleFailure {
    OracleExpr expr;
    std::string parabolic;
    std::string orbifold;
};

struct OracleReport {
    i64 checked = 0;
    std::vector<OracleFailure> failures;
    bool pass() const { return failures.empty(); }
};

// Runs `count` seeded random expressions over {tensor, dual, sym<=4, det}
// on Gunning-derived bundles and compares the two evaluation paths for
// exact equality of canonical forms.
OracleReport oracle_check(CurvePtr curve, std::uint64_t seed, i64 count);

} // namespace parop

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "parop/curve.hpp"
#include "parop/matrix.hpp"
#include "parop/poly.hpp"

namespace parop {

// First-order system with simple poles at the punctures.  The stored
// matrices are the residues of the connection d + sum_i A_i dz/(z - p_i);
// its flat sections solve s' = -(sum_i A_i/(z - p_i)) s, and a positively
// oriented loop around a puncture with diagonalisable non-resonant residue
// A has monodromy conjugate to exp(-2 pi i A).  That minus sign is the one
// global orientation convention of this module.
struct Puncture {
    cplx coordinate;
    CMat residue;
};

class FuchsianSystem {
public:
    FuchsianSystem(int rank, std::vector<Puncture> punctures);

    int rank() const { return rank_; }
    const std::vector<Puncture>& punctures() const { return punctures_; }
    CMat infinity_residue() const;

    // Connection form coefficient sum_i A_i / (z - p_i).
    CMat form_at(const cplx& z) const;

private:
    int rank_;
    std::vector<Puncture> punctures_;
};

FuchsianSystem build_fuchsian(int rank, std::vector<Puncture> punctures);

// Rank-(k+1) system whose solution space is the k-th symmetric power of a
// rank-2 system's: residues act as derivations on degree-k monomials.
FuchsianSystem sym_power_system(const FuchsianSystem& base, int k);

struct MonodromyResult {
    CMat matrix;
    double est_error = 0.0;
    bool resonance_warning = false;
    std::vector<std::string> notes;
};

// Monodromy of the flat frame along a positively oriented loop around the
// puncture, based at an automatically chosen common base point below the
// puncture configuration.  Error is controlled by comparing against a run
// at a tighter tolerance; falls below `tol` or IntegrationFailure.
MonodromyResult numerical_monodromy(const FuchsianSystem& sys, std::size_t puncture_index,
                                    double tol);

// Monodromy along the bare circle around one puncture (no connecting
// paths).  Conjugate to the based loop; much better conditioned, so the
// spectrum checks use this one.
MonodromyResult local_monodromy(const FuchsianSystem& sys, std::size_t puncture_index,
                                double tol);

// Monodromy around infinity (clockwise circle enclosing all punctures),
// based at the same base point.
MonodromyResult infinity_monodromy(const FuchsianSystem& sys, double tol);

struct ProductCheck {
    double deviation = 0.0; // max-abs of (M_inf * M_n * ... * M_1 - 1)
    bool pass = false;
};

// The composite of all puncture loops and the loop at infinity is trivial
// in the fundamental group; its monodromy must be the identity within
// 10 * tol.  Punctures compose ordered by descending angle as seen from
// the base point (left to right below the configuration).
ProductCheck monodromy_product_check(const FuchsianSystem& sys, double tol);

struct SpectrumReport {
    bool pass = false;
    std::vector<cplx> computed;
    std::vector<cplx> expected;
    double max_error = 0.0;
    bool semisimple = false;
    double eigenvector_condition = 0.0;
    bool resonance_warning = false;
};

// Eigenvalues of the numerical monodromy against {exp(-2 pi i w)} for the
// expected weights, plus a diagonalisability check via the conditioning of
// the eigenvector matrix (threshold `cond_threshold`).
SpectrumReport monodromy_spectrum_check(const FuchsianSystem& sys, std::size_t puncture_index,
                                        const std::vector<Rat>& expected_weights, double tol,
                                        double cond_threshold = 1e6);

struct IrreducibilityReport {
    bool irreducible = false;
    double min_invariance_angle = 0.0; // smallest max-deviation over candidates
};

// Rank-2 only: searches the eigenvectors of the puncture monodromies for a
// common invariant line.
IrreducibilityReport irreducibility_check(const FuchsianSystem& sys, double tol);

// Monic scalar operator d^r + a_{r-1} d^{r-1} + ... + a_0 with rational-
// function coefficients.
struct MonicOperator {
    int order = 0;
    std::vector<RatFn> coeffs; // a_0 .. a_{r-1}

    const RatFn& a(int j) const { return coeffs[static_cast<std::size_t>(j)]; }
};

MonicOperator make_monic_operator(int order, std::vector<RatFn> coeffs);

// Residue at p of the theta-form first-order system (theta = (z-p) d/dz):
// the companion matrix of the indicial polynomial.  Requires a regular
// singularity: a_{r-j} may have a pole of order at most j at p.
std::vector<std::vector<Rat>> companion_residue(const MonicOperator& op, const Rat& p);
CMat companion_residue_matrix(const MonicOperator& op, const Rat& p);

// Indicial polynomial at p, monic of degree r in the exponent variable.
Poly indicial_polynomial(const MonicOperator& op, const Rat& p);
std::vector<cplx> indicial_polynomial_numeric(const MonicOperator& op, const cplx& p);

struct IndicialRoots {
    std::vector<Rat> exact;
    std::vector<cplx> inexact;
    bool all_exact() const { return inexact.empty(); }
    std::vector<cplx> all() const;
};

IndicialRoots indicial_roots(const MonicOperator& op, const Rat& p);
std::vector<cplx> indicial_roots_numeric(const MonicOperator& op, const cplx& p);

// Monodromy of the connection attached to the operator's theta-form system
// around the puncture (same orientation convention as FuchsianSystem).
MonodromyResult companion_monodromy(const MonicOperator& op, const Rat& p, double tol);

// Sub-principal data in the affine chart: theta = -a_{r-1}(z) dz, the
// induced form on the determinant of the theta-companion system relative
// to the chart trivialisation.  Vanishes identically iff a_{r-1} = 0.
RatFn subprincipal_form(const MonicOperator& op);

// Conjugates the operator by (z - p)^m: exponents at p shift by m.
MonicOperator gauge_by_power(const MonicOperator& op, const Rat& p, i64 m);

// Order-2 operator with regular singularities at three finite points,
// prescribed exponent pairs, and an ordinary point at infinity; requires
// the exponent sum to be 1.
MonicOperator riemann_operator(const std::array<Rat, 3>& points,
                               const std::array<std::pair<Rat, Rat>, 3>& exponents);

// Symmetric square of d^2 + q: the order-3 operator with solution space
// spanned by products of solutions.
MonicOperator symmetric_square_order2(const MonicOperator& op);

struct ExponentPointReport {
    std::string label;
    bool pass = false;
    double max_error = 0.0;
    std::vector<cplx> roots;
    std::vector<Rat> expected_weights;
};

struct ExponentConsistencyReport {
    bool pass = false;
    bool subprincipal_vanishes = false;
    std::vector<ExponentPointReport> points;
    double fuchs_sum = 0.0;     // sum of all indicial roots at the marked points
    double fuchs_expected = 0.0; // n r (r-1) / 2 for a trace-free operator
    bool fuchs_ok = false;
};

// Desk-scale oper membership test: the operator must be trace-free
// (a_{r-1} = 0), regular-singular exactly at the marked points, and its
// local exponents must reduce mod 1 to the oper residue spectrum.
ExponentConsistencyReport oper_exponent_consistency(const CurvePtr& curve, int r,
                                                    const MonicOperator& op, double tol);

} // namespace parop

#pragma once

#include <vector>

#include "parop/bundle.hpp"

namespace parop {

// The rank-2 bundle carrying all oper structure: degree -n, weights
// { c_i/(2c_i+1), (c_i+1)/(2c_i+1) } at the i-th point, where the level is
// N_i = 2c_i + 1.  Requires every level odd and >= 5 (so c_i >= 2).
// Parabolic degree is zero by construction.
LocallyAbelianBundle gunning(CurvePtr curve);

// Per-point c_i = (N_i - 1)/2 for an admissible curve.
std::vector<i64> oper_levels_c(const MarkedCurve& curve);

// The line subbundle of the Gunning bundle with its induced structure:
// degree g-1, weight c_i/(2c_i+1).  Its square has underlying bundle K_X.
LocallyAbelianBundle gunning_subline(CurvePtr curve);

// Quotient line (equals the dual of the subline): degree 1-g-n, weight
// (c_i+1)/(2c_i+1).
LocallyAbelianBundle gunning_quotient_line(CurvePtr curve);

// Sym^{r-1} of the Gunning bundle; its determinant is the trivial parabolic
// line and its parabolic degree is zero.
LocallyAbelianBundle oper_bundle(CurvePtr curve, int r);

struct FiltrationRow {
    int j = 0;
    int rank = 0;
    i64 underlying_degree = 0;     // degree of F^j_0
    Rat par_degree;                // par-deg of F^j_*
    LocallyAbelianBundle graded;   // F^j / F^{j-1}, a parabolic line
};

// Canonical filtration F^1 c ... c F^r = Sym^{r-1}(E_*) of the oper
// bundle.  Row j's graded quotient is the (r-2j+1)-st parabolic power of
// the subline; ranks, degrees and parabolic degrees accumulate from there.
struct OperFiltration {
    int r = 0;
    std::vector<FiltrationRow> rows;
};

OperFiltration oper_filtration(CurvePtr curve, int r);

// Closed forms the filtration must reproduce:
//   graded:  par-deg(F^j/F^{j-1}) = (2j-r-1) * par-deg(E_*/L_*),
//   level:   par-deg(F^j) = j (r-j) (g - 1 + sum_i c_i/(2c_i+1)).
Rat graded_par_deg_closed_form(const MarkedCurve& curve, int r, int j);
Rat filtration_par_deg_closed_form(const MarkedCurve& curve, int r, int j);

// Underlying degree of the weight-(2k) power of the quotient line, the line
// whose sections obstruct a connection from skipping filtration steps:
//   k (2 - 2g - n) + sum_i floor(k / (2c_i+1)).
i64 xi_degree(const MarkedCurve& curve, int r, int k);

struct TransversalityRow {
    int k = 0;
    i64 xi = 0;            // xi degree
    i64 xi_twisted = 0;    // xi + (2g - 2 + n), must be negative
    bool ok = false;
};

struct TransversalityReport {
    bool pass = false;
    std::vector<TransversalityRow> degree_rows;      // k = 2 .. r-1
    std::vector<Rat> filtration_par_degs;            // j = 1 .. r-1, must be > 0
    std::vector<bool> filtration_positive;
};

// Degree test forcing Griffiths transversality: every off-step Hom line,
// twisted by K_X(S), has negative degree, and every proper filtration step
// has positive parabolic degree.
TransversalityReport transversality_report(CurvePtr curve, int r);

// Hom(F^j/F^{j-1}, F^{j+1}/F^j) (x) K_X(S): the value space of the j-th
// second fundamental form.  Underlying line is O_X (degree 0) with weight
// 1/(2c_i+1), independently of j.
LocallyAbelianBundle second_fundamental_target(CurvePtr curve, int r, int j);

// Forced residue eigenvalues of any parabolic connection on the oper
// bundle at the given point: its weight multiset there.
std::vector<Rat> residue_spectrum(CurvePtr curve, int r, const std::string& label);

} // namespace parop

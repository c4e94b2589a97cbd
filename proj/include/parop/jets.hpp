#pragma once

#include <optional>
#include <vector>

#include "parop/bundle.hpp"

namespace parop {

// j-th graded line of the parabolic jet tower: weight (j mod N_i)/N_i and
// underlying degree j (2 - 2g - n) + sum_i floor(j / N_i).  Works for any
// levels >= 2; no oper admissibility is needed.
LocallyAbelianBundle jet_graded(CurvePtr curve, i64 j);

struct JetTower {
    i64 k = 0;
    std::vector<LocallyAbelianBundle> graded; // rows j = 0..k
    i64 total_rank = 0;
    i64 total_degree = 0;
};

JetTower jet_tower(CurvePtr curve, i64 k);

struct DiffGradedPiece {
    i64 j = 0;
    LocallyAbelianBundle bundle;
    i64 underlying_degree = 0;
    i64 euler = 0;
};

// Graded model of the order-k differential operators from V to W:
// pieces W (x) (J^j/J^{j-1}) (x) V^* for j = 0..k.
struct DiffSpace {
    i64 k = 0;
    std::vector<DiffGradedPiece> pieces;
    i64 total_rank = 0;
    i64 total_degree = 0;
    i64 total_euler = 0;
};

DiffSpace diff_space(const LocallyAbelianBundle& v, const LocallyAbelianBundle& w, i64 k);

// Value space of the order-k symbol: TX(-S)^k_* (x) Hom(V, W).
LocallyAbelianBundle symbol_codomain(const LocallyAbelianBundle& v,
                                     const LocallyAbelianBundle& w, i64 k);

struct OperOperatorPiece {
    i64 j = 0;
    LocallyAbelianBundle line;
    i64 degree = 0;
    std::optional<i64> h0;    // exact at genus 0, or 0 whenever degree < 0
    bool boundary = false;    // degree == -1: graded count is a lower bound only
};

// The graded anatomy of the order-r operator space between the two natural
// parabolic lines attached to the Gunning bundle.  Piece j = r is the
// symbol line (always trivial), piece j = r-1 is where the sub-principal
// symbol lives, and the remaining pieces j <= r-2 count the affine
// parameters of symbol-1 operators with vanishing sub-principal part.
struct OperOperatorReport {
    int r = 0;
    std::vector<OperOperatorPiece> pieces;   // j = 0..r
    bool symbol_piece_trivial = false;
    std::optional<i64> affine_dimension;     // sum over j <= r-2 when all known
    bool dimension_lower_bound_only = false;
    i64 h0_canonical = 0;                    // dim H^0(K_X) = g
};

OperOperatorReport oper_operator_space(CurvePtr curve, int r);

struct RegularRepRow {
    Rat weight;
    i64 multiplicity = 0;
};

// Parabolic data of the pushforward of the trivial Galois-group bundle on a
// degree-d cover: rank d, weights {k/N_i} each with multiplicity d/N_i, and
// underlying degree (1 - g_Y) - d (1 - g).  Parabolic degree vanishes; this
// is the Riemann-Hurwitz identity in bundle form.
struct RegularRepReport {
    i64 cover_degree = 0;
    i64 cover_genus = 0;
    i64 rank = 0;
    i64 underlying_degree = 0;
    std::vector<std::vector<RegularRepRow>> rows; // per point
    Rat par_degree;
    bool pass = false;
};

RegularRepReport regular_rep_check(CurvePtr curve, i64 d);

} // namespace parop

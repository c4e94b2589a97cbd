#include "parop/jets.hpp"

#include "parop/oper.hpp"

namespace parop {

LocallyAbelianBundle jet_graded(CurvePtr curve, i64 j) {
    require(j >= 0, "InvalidArgument", "jet gradeds are indexed by j >= 0");
    validate_curve(*curve);
    i64 g = curve->genus;
    i64 n = static_cast<i64>(curve->size());
    i64 degree = j * (2 - 2 * g - n);
    std::vector<std::vector<Rat>> w;
    w.reserve(curve->size());
    for (const auto& p : curve->points) {
        degree += j / p.level;
        w.push_back({Rat(j % p.level, p.level)});
    }
    return LocallyAbelianBundle(std::move(curve), 1, degree, std::move(w));
}

JetTower jet_tower(CurvePtr curve, i64 k) {
    require(k >= 0, "InvalidArgument", "jet towers are indexed by k >= 0");
    JetTower t;
    t.k = k;
    for (i64 j = 0; j <= k; ++j) {
        t.graded.push_back(jet_graded(curve, j));
        t.total_degree += t.graded.back().degree();
    }
    t.total_rank = k + 1;
    return t;
}

DiffSpace diff_space(const LocallyAbelianBundle& v, const LocallyAbelianBundle& w, i64 k) {
    require(v.curve() == w.curve(), "CurveMismatch",
            "source and target live on different curves");
    require(k >= 0, "InvalidArgument", "operator order must be >= 0");
    DiffSpace d;
    d.k = k;
    LocallyAbelianBundle vdual = dual(v);
    for (i64 j = 0; j <= k; ++j) {
        LocallyAbelianBundle piece =
            tensor(tensor(w, jet_graded(v.curve_ptr(), j)), vdual);
        DiffGradedPiece p{j, piece, piece.degree(), euler_characteristic(piece)};
        d.total_rank += piece.rank();
        d.total_degree += piece.degree();
        d.total_euler += p.euler;
        d.pieces.push_back(std::move(p));
    }
    return d;
}

LocallyAbelianBundle symbol_codomain(const LocallyAbelianBundle& v,
                                     const LocallyAbelianBundle& w, i64 k) {
    require(v.curve() == w.curve(), "CurveMismatch",
            "source and target live on different curves");
    return tensor(jet_graded(v.curve_ptr(), k), hom(v, w));
}

OperOperatorReport oper_operator_space(CurvePtr curve, int r) {
    require(r >= 2, "InvalidArgument", "operator spaces are built for r >= 2");
    LocallyAbelianBundle sub = gunning_subline(curve);
    LocallyAbelianBundle source = line_power(sub, 1 - r);
    LocallyAbelianBundle target = line_power(sub, r + 1);
    LocallyAbelianBundle source_dual = dual(source);

    OperOperatorReport rep;
    rep.r = r;
    rep.h0_canonical = curve->genus;
    bool all_known = true;
    i64 affine = 0;
    for (int j = 0; j <= r; ++j) {
        LocallyAbelianBundle line =
            tensor(tensor(target, jet_graded(curve, j)), source_dual);
        OperOperatorPiece piece{j, line, line.degree(), std::nullopt, line.degree() == -1};
        if (curve->genus == 0)
            piece.h0 = h0_line_genus0(*curve, line.degree());
        else if (line.degree() < 0)
            piece.h0 = 0;
        if (j <= r - 2) {
            if (piece.h0)
                affine += *piece.h0;
            else
                all_known = false;
            rep.dimension_lower_bound_only =
                rep.dimension_lower_bound_only || piece.boundary;
        }
        rep.pieces.push_back(std::move(piece));
    }
    rep.symbol_piece_trivial =
        rep.pieces[r].line == trivial_line(curve);
    if (all_known) rep.affine_dimension = affine;
    return rep;
}

RegularRepReport regular_rep_check(CurvePtr curve, i64 d) {
    validate_curve(*curve);
    RegularRepReport rep;
    rep.cover_degree = d;
    rep.cover_genus = riemann_hurwitz_genus(*curve, d);
    rep.rank = d;
    i64 g = curve->genus;
    rep.underlying_degree = (1 - rep.cover_genus) - d * (1 - g);
    rep.par_degree = Rat(rep.underlying_degree);
    for (const auto& p : curve->points) {
        std::vector<RegularRepRow> rows;
        i64 mult = d / p.level;
        for (i64 k = p.level - 1; k >= 0; --k) {
            rows.push_back({Rat(k, p.level), mult});
            rep.par_degree += Rat(k, p.level) * Rat(mult);
        }
        rep.rows.push_back(std::move(rows));
    }
    rep.pass = rep.par_degree.is_zero();
    return rep;
}

} // namespace parop

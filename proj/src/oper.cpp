#include "parop/oper.hpp"

namespace parop {

std::vector<i64> oper_levels_c(const MarkedCurve& curve) {
    std::vector<i64> c;
    c.reserve(curve.size());
    for (const auto& p : curve.points) {
        require(p.level % 2 == 1, "LevelNotOdd",
                "level " + std::to_string(p.level) + " at '" + p.label +
                    "' is not of the form 2c+1");
        require(p.level >= 5, "LevelTooSmallForOper",
                "level at '" + p.label + "' must be >= 5 so that c >= 2");
        c.push_back((p.level - 1) / 2);
    }
    return c;
}

LocallyAbelianBundle gunning(CurvePtr curve) {
    validate_curve(*curve);
    auto c = oper_levels_c(*curve);
    std::vector<std::vector<Rat>> w;
    w.reserve(curve->size());
    for (std::size_t i = 0; i < curve->size(); ++i) {
        i64 n = curve->points[i].level;
        w.push_back({Rat(c[i] + 1, n), Rat(c[i], n)});
    }
    i64 n_points = static_cast<i64>(curve->size());
    return LocallyAbelianBundle(std::move(curve), 2, -n_points, std::move(w));
}

LocallyAbelianBundle gunning_subline(CurvePtr curve) {
    validate_curve(*curve);
    auto c = oper_levels_c(*curve);
    std::vector<std::vector<Rat>> w;
    for (std::size_t i = 0; i < curve->size(); ++i)
        w.push_back({Rat(c[i], curve->points[i].level)});
    i64 g = curve->genus;
    return LocallyAbelianBundle(std::move(curve), 1, g - 1, std::move(w));
}

LocallyAbelianBundle gunning_quotient_line(CurvePtr curve) {
    return dual(gunning_subline(std::move(curve)));
}

LocallyAbelianBundle oper_bundle(CurvePtr curve, int r) {
    require(r >= 2, "InvalidArgument", "oper bundles need rank >= 2");
    return sym_pow(gunning(std::move(curve)), r - 1);
}

OperFiltration oper_filtration(CurvePtr curve, int r) {
    require(r >= 2, "InvalidArgument", "oper filtrations need rank >= 2");
    LocallyAbelianBundle sub = gunning_subline(curve);
    OperFiltration f;
    f.r = r;
    i64 deg_acc = 0;
    Rat par_acc(0);
    for (int j = 1; j <= r; ++j) {
        LocallyAbelianBundle graded = line_power(sub, r - 2 * j + 1);
        deg_acc += graded.degree();
        par_acc += graded.par_deg();
        f.rows.push_back({j, j, deg_acc, par_acc, graded});
    }
    // Top of the filtration is the whole oper bundle.
    LocallyAbelianBundle top = oper_bundle(curve, r);
    require(f.rows.back().underlying_degree == top.degree() &&
                f.rows.back().par_degree == top.par_deg(),
            "Internal", "filtration top row disagrees with the symmetric power");
    return f;
}

Rat graded_par_deg_closed_form(const MarkedCurve& curve, int r, int j) {
    auto c = oper_levels_c(curve);
    Rat quotient_par_deg(1 - curve.genus - static_cast<i64>(curve.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        quotient_par_deg += Rat(c[i] + 1, curve.points[i].level);
    return Rat(2 * j - r - 1) * quotient_par_deg;
}

Rat filtration_par_deg_closed_form(const MarkedCurve& curve, int r, int j) {
    auto c = oper_levels_c(curve);
    Rat base(curve.genus - 1);
    for (std::size_t i = 0; i < c.size(); ++i)
        base += Rat(c[i], curve.points[i].level);
    return Rat(static_cast<i64>(j) * (r - j)) * base;
}

i64 xi_degree(const MarkedCurve& curve, int r, int k) {
    require(r >= 2, "InvalidArgument", "xi degrees need rank >= 2");
    require(k >= 2, "InvalidArgument", "xi degrees are defined for k >= 2");
    oper_levels_c(curve); // admissibility check
    i64 g = curve.genus;
    i64 n = static_cast<i64>(curve.size());
    i64 d = static_cast<i64>(k) * (2 - 2 * g - n);
    for (const auto& p : curve.points) d += k / p.level;
    return d;
}

TransversalityReport transversality_report(CurvePtr curve, int r) {
    require(r >= 2, "InvalidArgument", "rank must be >= 2");
    TransversalityReport rep;
    rep.pass = true;
    i64 g = curve->genus;
    i64 n = static_cast<i64>(curve->size());
    for (int k = 2; k <= r - 1; ++k) {
        TransversalityRow row;
        row.k = k;
        row.xi = xi_degree(*curve, r, k);
        row.xi_twisted = row.xi + (2 * g - 2 + n);
        row.ok = row.xi_twisted < 0;
        rep.pass = rep.pass && row.ok;
        rep.degree_rows.push_back(row);
    }
    OperFiltration f = oper_filtration(curve, r);
    for (int j = 1; j <= r - 1; ++j) {
        const Rat& pd = f.rows[j - 1].par_degree;
        bool pos = Rat(0) < pd;
        rep.filtration_par_degs.push_back(pd);
        rep.filtration_positive.push_back(pos);
        rep.pass = rep.pass && pos;
    }
    return rep;
}

LocallyAbelianBundle second_fundamental_target(CurvePtr curve, int r, int j) {
    require(1 <= j && j <= r - 1, "InvalidArgument", "need 1 <= j <= r-1");
    LocallyAbelianBundle sub = gunning_subline(curve);
    LocallyAbelianBundle from = line_power(sub, r - 2 * j + 1);
    LocallyAbelianBundle to = line_power(sub, r - 2 * (j + 1) + 1);
    i64 g = curve->genus;
    i64 n = static_cast<i64>(curve->size());
    LocallyAbelianBundle target =
        tensor(hom(from, to), weightless_line(curve, 2 * g - 2 + n));
    require(target.degree() == 0, "Internal",
            "second fundamental form target must be the trivial underlying line");
    for (std::size_t i = 0; i < target.curve().size(); ++i)
        require(target.weights_at(i)[0] == Rat(1, target.curve().points[i].level), "Internal",
                "second fundamental form target weight must be 1/level");
    return target;
}

std::vector<Rat> residue_spectrum(CurvePtr curve, int r, const std::string& label) {
    LocallyAbelianBundle v = oper_bundle(std::move(curve), r);
    std::size_t i = v.curve().index_of(label);
    return v.weights_at(i);
}

} // namespace parop

#include "parop/cli.hpp"

#include <cctype>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "parop/jets.hpp"
#include "parop/oper.hpp"

namespace parop::cli {

namespace {

std::string weights_str(const LocallyAbelianBundle& v, std::size_t i) {
    std::string s;
    for (const auto& w : v.weights_at(i)) {
        if (!s.empty()) s += " ";
        s += w.str();
    }
    return s;
}

Json bundle_summary(const LocallyAbelianBundle& v) {
    Json j = bundle_to_json(v);
    j["par_deg"] = v.par_deg().str();
    return j;
}

struct Ctx {
    bool json = false;
    std::string curve_file, system_file, op_file, source_file, target_file, point;
    int rank = 2;
    i64 power = 2;
    i64 order = 1;
    i64 cover = 0;
    double tol = 1e-10;
    std::uint64_t seed = 1;
    i64 count = 1000;
};

CurvePtr load_curve(const Ctx& ctx) {
    require(!ctx.curve_file.empty(), "Usage", "--curve FILE is required");
    return curve_from_json(load_json_file(ctx.curve_file));
}

CommandResult cmd_validate(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    CommandResult res;
    res.payload = curve_to_json(*curve);
    res.payload["valid"] = true;
    std::ostringstream os;
    os << "curve: genus " << curve->genus << ", " << curve->size() << " marked points\n";
    for (const auto& p : curve->points) {
        os << "  " << p.label << "  level " << p.level;
        if (p.coordinate)
            os << "  at (" << p.coordinate->real() << ", " << p.coordinate->imag() << ")";
        os << "\n";
    }
    os << "valid\n";
    res.text = os.str();
    return res;
}

CommandResult cmd_gunning(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    LocallyAbelianBundle e = gunning(curve);
    CommandResult res;
    res.payload = bundle_summary(e);
    std::ostringstream os;
    os << "rank " << e.rank() << "  degree " << e.degree() << "  par-deg "
       << e.par_deg().str() << "\n";
    os << std::left << std::setw(8) << "point" << std::setw(7) << "level"
       << "weights\n";
    for (std::size_t i = 0; i < curve->size(); ++i)
        os << std::left << std::setw(8) << curve->points[i].label << std::setw(7)
           << curve->points[i].level << weights_str(e, i) << "\n";
    res.text = os.str();
    return res;
}

CommandResult cmd_sym(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    LocallyAbelianBundle s = sym_pow(gunning(curve), static_cast<int>(ctx.power));
    CommandResult res;
    res.payload = bundle_summary(s);
    res.payload["power"] = ctx.power;
    std::ostringstream os;
    os << "sym^" << ctx.power << ": rank " << s.rank() << "  degree " << s.degree()
       << "  par-deg " << s.par_deg().str() << "\n";
    for (std::size_t i = 0; i < curve->size(); ++i)
        os << "  " << std::left << std::setw(8) << curve->points[i].label << weights_str(s, i)
           << "\n";
    res.text = os.str();
    return res;
}

CommandResult cmd_filtration(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    OperFiltration f = oper_filtration(curve, ctx.rank);
    CommandResult res;
    Json rows = Json::array();
    std::ostringstream os;
    os << std::left << std::setw(4) << "j" << std::setw(6) << "rank" << std::setw(10)
       << "deg F^j" << std::setw(12) << "par-deg F^j"
       << "graded weights\n";
    for (const auto& row : f.rows) {
        Json jr;
        jr["j"] = row.j;
        jr["rank"] = row.rank;
        jr["underlying_degree"] = row.underlying_degree;
        jr["par_deg"] = row.par_degree.str();
        jr["graded"] = bundle_summary(row.graded);
        rows.push_back(std::move(jr));
        os << std::left << std::setw(4) << row.j << std::setw(6) << row.rank << std::setw(10)
           << row.underlying_degree << std::setw(12) << row.par_degree.str();
        for (std::size_t i = 0; i < curve->size(); ++i)
            os << (i ? " | " : "") << weights_str(row.graded, i);
        os << "\n";
    }
    res.payload["rank"] = ctx.rank;
    res.payload["rows"] = std::move(rows);
    res.text = os.str();
    return res;
}

CommandResult cmd_xi(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    CommandResult res;
    Json rows = Json::array();
    std::ostringstream os;
    os << std::left << std::setw(4) << "k" << std::setw(10) << "deg xi"
       << "deg xi + (2g-2+n)\n";
    i64 shift = 2 * curve->genus - 2 + static_cast<i64>(curve->size());
    for (int k = 2; k <= static_cast<int>(ctx.power); ++k) {
        i64 xi = xi_degree(*curve, ctx.rank, k);
        Json jr;
        jr["k"] = k;
        jr["xi_degree"] = xi;
        jr["twisted_degree"] = xi + shift;
        rows.push_back(std::move(jr));
        os << std::left << std::setw(4) << k << std::setw(10) << xi << (xi + shift) << "\n";
    }
    res.payload["rows"] = std::move(rows);
    res.text = os.str();
    return res;
}

CommandResult cmd_transversality(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    TransversalityReport rep = transversality_report(curve, ctx.rank);
    CommandResult res;
    res.status = rep.pass ? Status::Ok : Status::Fail;
    Json rows = Json::array();
    std::ostringstream os;
    for (const auto& row : rep.degree_rows) {
        Json jr;
        jr["k"] = row.k;
        jr["xi_degree"] = row.xi;
        jr["twisted_degree"] = row.xi_twisted;
        jr["negative"] = row.ok;
        rows.push_back(std::move(jr));
        os << "k=" << row.k << "  deg xi=" << row.xi << "  twisted=" << row.xi_twisted << "  "
           << (row.ok ? "ok" : "VIOLATION") << "\n";
    }
    Json pds = Json::array();
    for (std::size_t j = 0; j < rep.filtration_par_degs.size(); ++j) {
        Json jr;
        jr["j"] = j + 1;
        jr["par_deg"] = rep.filtration_par_degs[j].str();
        jr["positive"] = static_cast<bool>(rep.filtration_positive[j]);
        pds.push_back(std::move(jr));
        os << "j=" << (j + 1) << "  par-deg F^j=" << rep.filtration_par_degs[j].str() << "  "
           << (rep.filtration_positive[j] ? "ok" : "VIOLATION") << "\n";
    }
    os << (rep.pass ? "pass" : "fail") << "\n";
    res.payload["degree_rows"] = std::move(rows);
    res.payload["filtration"] = std::move(pds);
    res.payload["pass"] = rep.pass;
    res.text = os.str();
    if (!rep.pass) res.diagnostics.push_back("transversality degree test failed");
    return res;
}

CommandResult cmd_jets(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    JetTower t = jet_tower(curve, ctx.order);
    CommandResult res;
    Json rows = Json::array();
    std::ostringstream os;
    os << std::left << std::setw(4) << "j" << std::setw(9) << "degree"
       << "weights\n";
    for (i64 j = 0; j <= t.k; ++j) {
        const auto& line = t.graded[static_cast<std::size_t>(j)];
        Json jr;
        jr["j"] = j;
        jr["degree"] = line.degree();
        Json w;
        for (std::size_t i = 0; i < curve->size(); ++i)
            w[curve->points[i].label] = line.weights_at(i)[0].str();
        jr["weights"] = std::move(w);
        rows.push_back(std::move(jr));
        os << std::left << std::setw(4) << j << std::setw(9) << line.degree();
        for (std::size_t i = 0; i < curve->size(); ++i)
            os << (i ? " " : "") << line.weights_at(i)[0].str();
        os << "\n";
    }
    os << "total rank " << t.total_rank << "  total degree " << t.total_degree << "\n";
    res.payload["order"] = t.k;
    res.payload["rows"] = std::move(rows);
    res.payload["total_rank"] = t.total_rank;
    res.payload["total_degree"] = t.total_degree;
    res.text = os.str();
    return res;
}

CommandResult cmd_diffspace(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    require(!ctx.source_file.empty() && !ctx.target_file.empty(), "Usage",
            "--source and --target bundle files are required");
    LocallyAbelianBundle v = bundle_from_json(load_json_file(ctx.source_file), curve);
    LocallyAbelianBundle w = bundle_from_json(load_json_file(ctx.target_file), curve);
    DiffSpace d = diff_space(v, w, ctx.order);
    CommandResult res;
    Json rows = Json::array();
    std::ostringstream os;
    os << std::left << std::setw(4) << "j" << std::setw(7) << "rank" << std::setw(9)
       << "degree" << "euler\n";
    for (const auto& piece : d.pieces) {
        Json jr;
        jr["j"] = piece.j;
        jr["bundle"] = bundle_summary(piece.bundle);
        jr["euler"] = piece.euler;
        rows.push_back(std::move(jr));
        os << std::left << std::setw(4) << piece.j << std::setw(7) << piece.bundle.rank()
           << std::setw(9) << piece.underlying_degree << piece.euler << "\n";
    }
    os << "total rank " << d.total_rank << "  degree " << d.total_degree << "  euler "
       << d.total_euler << "\n";
    res.payload["order"] = d.k;
    res.payload["pieces"] = std::move(rows);
    res.payload["total_rank"] = d.total_rank;
    res.payload["total_degree"] = d.total_degree;
    res.payload["total_euler"] = d.total_euler;
    res.text = os.str();
    return res;
}

CommandResult cmd_oper_operators(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    OperOperatorReport rep = oper_operator_space(curve, ctx.rank);
    CommandResult res;
    Json rows = Json::array();
    std::ostringstream os;
    os << std::left << std::setw(4) << "j" << std::setw(9) << "degree" << std::setw(8)
       << "h0" << "role\n";
    for (const auto& piece : rep.pieces) {
        Json jr;
        jr["j"] = piece.j;
        jr["line"] = bundle_summary(piece.line);
        if (piece.h0) jr["h0"] = *piece.h0;
        jr["boundary"] = piece.boundary;
        rows.push_back(std::move(jr));
        std::string role = piece.j == rep.r       ? "symbol"
                           : piece.j == rep.r - 1 ? "sub-principal"
                                                  : "parameter";
        os << std::left << std::setw(4) << piece.j << std::setw(9) << piece.degree
           << std::setw(8) << (piece.h0 ? std::to_string(*piece.h0) : std::string("?"))
           << role << (piece.boundary ? "  (boundary degree -1)" : "") << "\n";
    }
    os << "symbol piece trivial: " << (rep.symbol_piece_trivial ? "yes" : "no") << "\n";
    if (rep.affine_dimension)
        os << "affine dimension of symbol-1, sub-principal-free operators: "
           << *rep.affine_dimension << (rep.dimension_lower_bound_only ? " (lower bound)" : "")
           << "\n";
    os << "dim H^0(K) = " << rep.h0_canonical << "\n";
    res.payload["rank"] = rep.r;
    res.payload["pieces"] = std::move(rows);
    res.payload["symbol_piece_trivial"] = rep.symbol_piece_trivial;
    if (rep.affine_dimension) res.payload["affine_dimension"] = *rep.affine_dimension;
    res.payload["dimension_lower_bound_only"] = rep.dimension_lower_bound_only;
    res.payload["h0_canonical"] = rep.h0_canonical;
    res.status = rep.symbol_piece_trivial ? Status::Ok : Status::Fail;
    res.text = os.str();
    return res;
}

CommandResult cmd_oracle_check(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    OracleReport rep = oracle_check(curve, ctx.seed, ctx.count);
    CommandResult res;
    res.status = rep.pass() ? Status::Ok : Status::Fail;
    res.payload["checked"] = rep.checked;
    res.payload["failures"] = Json::array();
    std::ostringstream os;
    os << "checked " << rep.checked << " expressions: "
       << (rep.pass() ? "all agree" : std::to_string(rep.failures.size()) + " mismatches")
       << "\n";
    for (const auto& f : rep.failures) {
        Json jf;
        jf["expression"] = oracle_expr_to_json(f.expr);
        jf["parabolic"] = f.parabolic;
        jf["orbifold"] = f.orbifold;
        res.payload["failures"].push_back(std::move(jf));
        os << "MISMATCH " << f.expr.to_string() << "\n  parabolic: " << f.parabolic
           << "\n  orbifold:  " << f.orbifold << "\n";
        res.diagnostics.push_back("OracleMismatch: " + f.expr.to_string());
    }
    res.text = os.str();
    return res;
}

CommandResult cmd_theta_check(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    i64 d = ctx.cover > 0 ? ctx.cover : default_cover_degree(*curve);
    ThetaCheckReport rep = theta_characteristic_check(curve, d);
    CommandResult res;
    res.status = rep.pass ? Status::Ok : Status::Fail;
    res.payload["cover_degree"] = rep.cover_degree;
    res.payload["cover_genus"] = rep.cover_genus;
    res.payload["theta_degree_upstairs"] = rep.theta_degree_upstairs;
    res.payload["pass"] = rep.pass;
    std::ostringstream os;
    os << "cover degree " << rep.cover_degree << "  cover genus " << rep.cover_genus << "\n"
       << "2 * deg = " << 2 * rep.theta_degree_upstairs << " vs 2g_Y - 2 = "
       << 2 * rep.cover_genus - 2 << ": " << (rep.pass ? "pass" : "fail") << "\n";
    res.text = os.str();
    return res;
}

CommandResult cmd_regrep(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    i64 d = ctx.cover > 0 ? ctx.cover : default_cover_degree(*curve);
    RegularRepReport rep = regular_rep_check(curve, d);
    CommandResult res;
    res.status = rep.pass ? Status::Ok : Status::Fail;
    res.payload["cover_degree"] = rep.cover_degree;
    res.payload["cover_genus"] = rep.cover_genus;
    res.payload["rank"] = rep.rank;
    res.payload["underlying_degree"] = rep.underlying_degree;
    res.payload["par_deg"] = rep.par_degree.str();
    Json rows;
    for (std::size_t i = 0; i < curve->size(); ++i) {
        Json point_rows = Json::array();
        for (const auto& row : rep.rows[i]) {
            Json jr;
            jr["weight"] = row.weight.str();
            jr["multiplicity"] = row.multiplicity;
            point_rows.push_back(std::move(jr));
        }
        rows[curve->points[i].label] = std::move(point_rows);
    }
    res.payload["weights"] = std::move(rows);
    res.payload["pass"] = rep.pass;
    std::ostringstream os;
    os << "rank " << rep.rank << "  degree " << rep.underlying_degree << "  cover genus "
       << rep.cover_genus << "  par-deg " << rep.par_degree.str() << "  "
       << (rep.pass ? "pass" : "fail") << "\n";
    res.text = os.str();
    return res;
}

std::size_t resolve_puncture(const FuchsianSystem& sys, const std::string& point) {
    require(!point.empty(), "Usage", "--point is required");
    if (point[0] == 'x' || point[0] == '#') {
        std::size_t idx = std::stoul(point.substr(1));
        require(idx >= 1 && idx <= sys.punctures().size(), "InvalidArgument",
                "puncture index out of range");
        return idx - 1;
    }
    Json j = Json::parse(point, nullptr, false);
    cplx target;
    if (!j.is_discarded() && j.is_array() && j.size() == 2)
        target = cplx(j[0].get<double>(), j[1].get<double>());
    else
        target = cplx(Rat::parse(point).to_double(), 0.0);
    for (std::size_t i = 0; i < sys.punctures().size(); ++i)
        if (std::abs(sys.punctures()[i].coordinate - target) < 1e-9) return i;
    fail("InvalidArgument", "no puncture at " + point);
}

Json matrix_to_json(const CMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.size(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CommandResult cmd_monodromy(const Ctx& ctx) {
    require(!ctx.system_file.empty(), "Usage", "--system FILE is required");
    FuchsianSystem sys = system_from_json(load_json_file(ctx.system_file));
    CommandResult res;
    MonodromyResult m = ctx.point == "inf" || ctx.point == "infinity"
                            ? infinity_monodromy(sys, ctx.tol)
                            : numerical_monodromy(sys, resolve_puncture(sys, ctx.point), ctx.tol);
    res.payload["matrix"] = matrix_to_json(m.matrix);
    res.payload["estimated_error"] = m.est_error;
    res.payload["resonance_warning"] = m.resonance_warning;
    Json eigs = Json::array();
    std::ostringstream os;
    os << std::setprecision(12);
    os << "monodromy around " << ctx.point << " (estimated error " << m.est_error << ")\n";
    for (const auto& e : m.matrix.eigenvalues()) {
        eigs.push_back(Json::array({e.real(), e.imag()}));
        os << "  eigenvalue " << e.real() << (e.imag() < 0 ? " - " : " + ")
           << std::abs(e.imag()) << "i\n";
    }
    res.payload["eigenvalues"] = std::move(eigs);
    if (m.resonance_warning) {
        res.status = Status::Warning;
        res.diagnostics.push_back("ResonanceWarning: residue eigenvalues differ by integers");
        os << "warning: resonant residue\n";
    }
    res.text = os.str();
    return res;
}

CommandResult cmd_indicial(const Ctx& ctx) {
    require(!ctx.op_file.empty(), "Usage", "--op FILE is required");
    MonicOperator op = operator_from_json(load_json_file(ctx.op_file));
    require(!ctx.point.empty(), "Usage", "--point is required");
    CommandResult res;
    std::ostringstream os;
    os << std::setprecision(12);
    std::string point = ctx.point;
    // labels resolve through the curve file to a coordinate
    if (!ctx.curve_file.empty() && std::isalpha(static_cast<unsigned char>(point[0]))) {
        CurvePtr curve = load_curve(ctx);
        std::size_t i = curve->index_of(point);
        require(curve->points[i].coordinate.has_value(), "InvalidArgument",
                "marked point '" + point + "' has no coordinate");
        cplx c = *curve->points[i].coordinate;
        std::ostringstream enc;
        enc << "[" << c.real() << "," << c.imag() << "]";
        point = enc.str();
    }
    bool exact_point = point.find_first_not_of("+-/0123456789") == std::string::npos;
    if (exact_point) {
        IndicialRoots roots = indicial_roots(op, Rat::parse(point));
        Json je = Json::array();
        for (const auto& r : roots.exact) je.push_back(r.str());
        Json ji = Json::array();
        for (const auto& r : roots.inexact) ji.push_back(Json::array({r.real(), r.imag()}));
        res.payload["exact_roots"] = std::move(je);
        res.payload["numeric_roots"] = std::move(ji);
        os << "indicial roots at " << ctx.point << ":";
        for (const auto& r : roots.exact) os << " " << r.str();
        for (const auto& r : roots.inexact)
            os << " (" << r.real() << (r.imag() < 0 ? "-" : "+") << std::abs(r.imag()) << "i)";
        os << "\n";
    } else {
        Json j = Json::parse(point);
        cplx p(j[0].get<double>(), j[1].get<double>());
        Json ji = Json::array();
        os << "indicial roots at " << ctx.point << ":";
        for (const auto& r : indicial_roots_numeric(op, p)) {
            ji.push_back(Json::array({r.real(), r.imag()}));
            os << " (" << r.real() << (r.imag() < 0 ? "-" : "+") << std::abs(r.imag()) << "i)";
        }
        res.payload["numeric_roots"] = std::move(ji);
        os << "\n";
    }
    res.text = os.str();
    return res;
}

CommandResult cmd_subprincipal(const Ctx& ctx) {
    require(!ctx.op_file.empty(), "Usage", "--op FILE is required");
    MonicOperator op = operator_from_json(load_json_file(ctx.op_file));
    RatFn theta = subprincipal_form(op);
    CommandResult res;
    res.payload["theta_num"] = Json::array();
    res.payload["theta_den"] = Json::array();
    for (const auto& c : theta.num().coeffs()) res.payload["theta_num"].push_back(c.str());
    for (const auto& c : theta.den().coeffs()) res.payload["theta_den"].push_back(c.str());
    res.payload["vanishes"] = theta.is_zero();
    res.text = "theta = " + (theta.is_zero() ? std::string("0") : theta.str()) + " dz\n" +
               (theta.is_zero() ? "sub-principal symbol vanishes\n"
                                : "sub-principal symbol is nonzero\n");
    return res;
}

CommandResult cmd_oper_check(const Ctx& ctx) {
    CurvePtr curve = load_curve(ctx);
    require(!ctx.op_file.empty(), "Usage", "--op FILE is required");
    MonicOperator op = operator_from_json(load_json_file(ctx.op_file));
    ExponentConsistencyReport rep = oper_exponent_consistency(curve, ctx.rank, op, ctx.tol);
    CommandResult res;
    res.status = rep.pass ? Status::Ok : Status::Fail;
    res.payload["pass"] = rep.pass;
    res.payload["subprincipal_vanishes"] = rep.subprincipal_vanishes;
    res.payload["fuchs_sum"] = rep.fuchs_sum;
    res.payload["fuchs_expected"] = rep.fuchs_expected;
    Json pts = Json::array();
    std::ostringstream os;
    os << std::setprecision(12);
    os << "sub-principal vanishes: " << (rep.subprincipal_vanishes ? "yes" : "NO") << "\n";
    for (const auto& p : rep.points) {
        Json jp;
        jp["label"] = p.label;
        jp["pass"] = p.pass;
        jp["max_error"] = p.max_error;
        pts.push_back(std::move(jp));
        os << "  " << p.label << ": " << (p.pass ? "pass" : "FAIL") << " (max error "
           << p.max_error << ")\n";
    }
    res.payload["points"] = std::move(pts);
    os << "exponent sum " << rep.fuchs_sum << " (expected " << rep.fuchs_expected << "): "
       << (rep.fuchs_ok ? "ok" : "FAIL") << "\n"
       << (rep.pass ? "pass" : "fail") << "\n";
    res.text = os.str();
    if (!rep.pass) res.diagnostics.push_back("operator fails the oper membership conditions");
    return res;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact calculus for parabolic bundles on marked curves, with an "
                 "orbifold cross-check and a Fuchsian monodromy lab"};
    app.fallthrough();
    Ctx ctx;
    app.add_flag("--json", ctx.json, "emit JSON instead of text");
    app.add_option("--curve", ctx.curve_file, "curve JSON file");
    app.add_option("--system", ctx.system_file, "Fuchsian system JSON file");
    app.add_option("--op", ctx.op_file, "operator JSON file");
    app.add_option("--source", ctx.source_file, "source bundle JSON file");
    app.add_option("--target", ctx.target_file, "target bundle JSON file");
    app.add_option("--point", ctx.point, "point label/index/coordinate");
    app.add_option("--rank", ctx.rank, "rank r");
    app.add_option("--power", ctx.power, "power k");
    app.add_option("--order", ctx.order, "order k");
    app.add_option("--cover", ctx.cover, "cover degree (default lcm of levels)");
    app.add_option("--tol", ctx.tol, "numerical tolerance");
    app.add_option("--seed", ctx.seed, "random seed");
    app.add_option("--count", ctx.count, "number of randomized checks");

    struct Sub {
        const char* name;
        const char* help;
        CommandResult (*fn)(const Ctx&);
    };
    static const Sub subs[] = {
        {"validate", "check curve invariants", cmd_validate},
        {"gunning", "the rank-2 bundle and its weights", cmd_gunning},
        {"sym", "symmetric power table (--power)", cmd_sym},
        {"filtration", "canonical filtration of the rank-r bundle (--rank)", cmd_filtration},
        {"xi", "off-step Hom line degrees (--rank, --power = max k)", cmd_xi},
        {"transversality", "degree tests forcing transversality (--rank)", cmd_transversality},
        {"jets", "jet tower gradeds (--order)", cmd_jets},
        {"diffspace", "operator space gradeds (--order, --source, --target)", cmd_diffspace},
        {"oper-operators", "operator space between the natural lines (--rank)",
         cmd_oper_operators},
        {"oracle-check", "randomized parabolic/orbifold cross-check (--seed, --count)",
         cmd_oracle_check},
        {"theta-check", "theta characteristic degree test (--cover)", cmd_theta_check},
        {"regrep", "regular-representation pushforward data (--cover)", cmd_regrep},
        {"monodromy", "numerical loop monodromy (--system, --point, --tol)", cmd_monodromy},
        {"indicial", "indicial roots at a point (--op, --point)", cmd_indicial},
        {"subprincipal", "sub-principal form of an operator (--op)", cmd_subprincipal},
        {"oper-check", "oper membership test for an operator (--curve, --rank, --op, --tol)",
         cmd_oper_check},
    };
    CommandResult (*selected)(const Ctx&) = nullptr;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->callback([&selected, fn = s.fn] { selected = fn; });
    }
    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    auto emit_error = [&](const std::string& message, int code) {
        if (ctx.json) {
            Json envelope;
            envelope["status"] = "error";
            envelope["payload"] = Json::object();
            envelope["diagnostics"] = Json::array({message});
            out << envelope.dump(2) << "\n";
        }
        err << "error: " << message << "\n";
        return code;
    };
    try {
        CommandResult res = selected(ctx);
        if (ctx.json) {
            Json envelope;
            envelope["status"] = res.status == Status::Ok      ? "ok"
                                 : res.status == Status::Fail ? "fail"
                                                              : "warning";
            envelope["payload"] = res.payload;
            envelope["diagnostics"] = res.diagnostics;
            out << envelope.dump(2) << "\n";
        } else {
            out << res.text;
            for (const auto& d : res.diagnostics) err << d << "\n";
        }
        return res.exit_code();
    } catch (const Error& e) {
        return emit_error(e.what(), e.code() == "IntegrationFailure" ? 1 : 2);
    } catch (const std::exception& e) {
        return emit_error(e.what(), 2);
    }
}

} // namespace parop::cli

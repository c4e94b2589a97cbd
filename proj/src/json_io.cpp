#include "parop/json_io.hpp"

#include <fstream>

namespace parop {

namespace {

Json complex_to_json(const cplx& z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_string()) return cplx(Rat::parse(j.get<std::string>()).to_double(), 0.0);
    require(j.is_array() && j.size() == 2, "ParseError",
            "complex numbers are [re, im] arrays");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    require(j.is_string(), "ParseError", "rationals are \"a/b\" strings");
    return Rat::parse(j.get<std::string>());
}

Poly poly_from_json(const Json& j) {
    std::vector<Rat> c;
    require(j.is_array(), "ParseError", "polynomials are arrays of ascending coefficients");
    for (const auto& x : j) c.push_back(rat_from_json(x));
    return Poly(std::move(c));
}

Json poly_to_json(const Poly& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.str());
    return a;
}

} // namespace

Json curve_to_json(const MarkedCurve& curve) {
    Json j;
    j["genus"] = curve.genus;
    Json pts = Json::array();
    for (const auto& p : curve.points) {
        Json q;
        q["label"] = p.label;
        q["level"] = p.level;
        if (p.coordinate) q["coordinate"] = complex_to_json(*p.coordinate);
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    return j;
}

CurvePtr curve_from_json(const Json& j) {
    require(j.contains("genus") && j.contains("points"), "ParseError",
            "curve files need 'genus' and 'points'");
    std::vector<MarkedPoint> pts;
    for (const auto& q : j["points"]) {
        MarkedPoint p;
        p.label = q.at("label").get<std::string>();
        p.level = q.at("level").get<int>();
        if (q.contains("coordinate")) p.coordinate = complex_from_json(q["coordinate"]);
        pts.push_back(std::move(p));
    }
    return make_curve(j["genus"].get<int>(), std::move(pts));
}

Json bundle_to_json(const LocallyAbelianBundle& v) {
    Json j;
    j["rank"] = v.rank();
    j["degree"] = v.degree();
    Json w;
    for (std::size_t i = 0; i < v.curve().size(); ++i) {
        Json row = Json::array();
        for (const auto& x : v.weights_at(i)) row.push_back(x.str());
        w[v.curve().points[i].label] = std::move(row);
    }
    j["weights"] = std::move(w);
    return j;
}

LocallyAbelianBundle bundle_from_json(const Json& j, CurvePtr curve) {
    int rank = j.at("rank").get<int>();
    i64 degree = j.at("degree").get<i64>();
    std::vector<std::vector<Rat>> w(curve->size());
    const Json& weights = j.at("weights");
    for (std::size_t i = 0; i < curve->size(); ++i) {
        const std::string& label = curve->points[i].label;
        require(weights.contains(label), "ParseError",
                "bundle file is missing weights at '" + label + "'");
        for (const auto& x : weights[label]) w[i].push_back(rat_from_json(x));
    }
    return LocallyAbelianBundle(std::move(curve), rank, degree, std::move(w));
}

Json system_to_json(const FuchsianSystem& sys) {
    Json j;
    j["rank"] = sys.rank();
    Json ps = Json::array();
    for (const auto& p : sys.punctures()) {
        Json q;
        q["coordinate"] = complex_to_json(p.coordinate);
        Json rows = Json::array();
        for (int r = 0; r < sys.rank(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < sys.rank(); ++c) row.push_back(complex_to_json(p.residue(r, c)));
            rows.push_back(std::move(row));
        }
        q["residue"] = std::move(rows);
        ps.push_back(std::move(q));
    }
    j["punctures"] = std::move(ps);
    return j;
}

FuchsianSystem system_from_json(const Json& j) {
    int rank = j.at("rank").get<int>();
    std::vector<Puncture> ps;
    for (const auto& q : j.at("punctures")) {
        Puncture p;
        p.coordinate = complex_from_json(q.at("coordinate"));
        const Json& rows = q.at("residue");
        require(static_cast<int>(rows.size()) == rank, "ParseError",
                "residue row count must equal the rank");
        p.residue = CMat(rank);
        for (int r = 0; r < rank; ++r) {
            require(static_cast<int>(rows[r].size()) == rank, "ParseError",
                    "residue must be square");
            for (int c = 0; c < rank; ++c) p.residue(r, c) = complex_from_json(rows[r][c]);
        }
        ps.push_back(std::move(p));
    }
    return build_fuchsian(rank, std::move(ps));
}

Json operator_to_json(const MonicOperator& op) {
    Json j;
    j["order"] = op.order;
    Json cs = Json::array();
    for (const auto& c : op.coeffs) {
        Json q;
        q["num"] = poly_to_json(c.num());
        q["den"] = poly_to_json(c.den());
        cs.push_back(std::move(q));
    }
    j["coefficients"] = std::move(cs);
    return j;
}

MonicOperator operator_from_json(const Json& j) {
    int order = j.at("order").get<int>();
    std::vector<RatFn> coeffs;
    for (const auto& q : j.at("coefficients"))
        coeffs.emplace_back(poly_from_json(q.at("num")), poly_from_json(q.at("den")));
    return make_monic_operator(order, std::move(coeffs));
}

Json oracle_expr_to_json(const OracleExpr& e) {
    Json j;
    switch (e.kind) {
        case OracleExpr::Kind::Gunning: j["op"] = "gunning"; break;
        case OracleExpr::Kind::SubLine: j["op"] = "subline"; break;
        case OracleExpr::Kind::QuotientLine: j["op"] = "quotient"; break;
        case OracleExpr::Kind::Trivial: j["op"] = "trivial"; break;
        case OracleExpr::Kind::Tensor: j["op"] = "tensor"; break;
        case OracleExpr::Kind::Dual: j["op"] = "dual"; break;
        case OracleExpr::Kind::Sym: j["op"] = "sym"; j["k"] = e.sym_k; break;
        case OracleExpr::Kind::Det: j["op"] = "det"; break;
    }
    if (!e.children.empty()) {
        Json kids = Json::array();
        for (const auto& c : e.children) kids.push_back(oracle_expr_to_json(c));
        j["args"] = std::move(kids);
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "FileNotFound", "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("ParseError", "invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

} // namespace parop

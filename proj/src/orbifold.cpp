#include "parop/orbifold.hpp"

#include <algorithm>
#include <functional>

#include "parop/oper.hpp"

namespace parop {

namespace {

// Deterministic splitmix64; the driver must replay identically everywhere,
// so no standard-library distributions.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    i64 below(i64 n) { return static_cast<i64>(next() % static_cast<std::uint64_t>(n)); }
};

void check_compatible(const OrbifoldBundle& a, const OrbifoldBundle& b) {
    require(a.curve() == b.curve(), "CurveMismatch",
            "orbifold operands live on different curves");
    require(a.cover_degree() == b.cover_degree(), "CoverMismatch",
            "orbifold operands use different cover degrees");
}

OrbifoldComponent component_tensor(const MarkedCurve& curve, const OrbifoldComponent& a,
                                   const OrbifoldComponent& b) {
    OrbifoldComponent c;
    c.y_degree = a.y_degree + b.y_degree;
    c.characters.reserve(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i)
        c.characters.push_back((a.characters[i] + b.characters[i]) % curve.points[i].level);
    return c;
}

void for_each_multiset(int r, int k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(k, 0);
    if (k == 0) { visit(idx); return; }
    while (true) {
        visit(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == r - 1) --pos;
        if (pos < 0) break;
        int next = idx[pos] + 1;
        for (int j = pos; j < k; ++j) idx[j] = next;
    }
}

} // namespace

OrbifoldBundle::OrbifoldBundle(CurvePtr curve, i64 cover_degree,
                               std::vector<OrbifoldComponent> components)
    : curve_(std::move(curve)), cover_degree_(cover_degree), components_(std::move(components)) {
    require(curve_ != nullptr, "InvalidArgument", "orbifold bundle needs a curve");
    for (const auto& p : curve_->points)
        require(cover_degree_ % p.level == 0, "IndivisibleCoverDegree",
                "cover degree " + std::to_string(cover_degree_) +
                    " is not divisible by the level at '" + p.label + "'");
    for (const auto& comp : components_) {
        require(comp.characters.size() == curve_->size(), "InvalidArgument",
                "need one character per marked point");
        for (std::size_t i = 0; i < curve_->size(); ++i)
            require(0 <= comp.characters[i] && comp.characters[i] < curve_->points[i].level,
                    "InvalidArgument", "character out of range at '" +
                        curve_->points[i].label + "'");
    }
}

void OrbifoldBundle::validate() const {
    for (const auto& comp : components_) {
        i64 residual = comp.y_degree;
        for (std::size_t i = 0; i < curve_->size(); ++i)
            residual -= static_cast<i64>(comp.characters[i]) *
                        (cover_degree_ / curve_->points[i].level);
        require(residual % cover_degree_ == 0, "NonIntegralPushforward",
                "component of upstairs degree " + std::to_string(comp.y_degree) +
                    " does not push forward to an integral degree");
    }
}

LocallyAbelianBundle SplitBundle::assemble() const {
    require(!lines.empty(), "InvalidArgument", "empty split bundle");
    i64 degree = 0;
    std::vector<std::vector<Rat>> w(curve->size());
    for (const auto& line : lines) {
        require(line.rank() == 1, "InvalidArgument", "split components must be lines");
        require(line.curve() == *curve, "CurveMismatch", "split component on wrong curve");
        degree += line.degree();
        for (std::size_t i = 0; i < curve->size(); ++i)
            w[i].push_back(line.weights_at(i)[0]);
    }
    return LocallyAbelianBundle(curve, static_cast<int>(lines.size()), degree, std::move(w));
}

SplitBundle split_gunning(CurvePtr curve) {
    SplitBundle s;
    s.curve = curve;
    s.lines.push_back(gunning_subline(curve));
    s.lines.push_back(gunning_quotient_line(curve));
    return s;
}

OrbifoldBundle to_orbifold(const SplitBundle& v, i64 cover_degree) {
    std::vector<OrbifoldComponent> comps;
    comps.reserve(v.lines.size());
    for (const auto& line : v.lines) {
        OrbifoldComponent c;
        c.characters.reserve(v.curve->size());
        Rat y = Rat(cover_degree) * line.par_deg();
        require(y.is_integer(), "IndivisibleCoverDegree",
                "cover degree does not clear the weight denominators");
        c.y_degree = y.num();
        for (std::size_t i = 0; i < v.curve->size(); ++i) {
            Rat k = line.weights_at(i)[0] * Rat(v.curve->points[i].level);
            require(k.is_integer(), "Internal", "weight denominator exceeds the level");
            c.characters.push_back(static_cast<int>(k.num()));
        }
        comps.push_back(std::move(c));
    }
    OrbifoldBundle o(v.curve, cover_degree, std::move(comps));
    o.validate();
    return o;
}

OrbifoldBundle to_orbifold(const LocallyAbelianBundle& line, i64 cover_degree) {
    require(line.rank() == 1, "InvalidArgument",
            "only split data crosses to the cover side; pass a SplitBundle for higher rank");
    SplitBundle s{line.curve_ptr(), {line}};
    return to_orbifold(s, cover_degree);
}

SplitBundle from_orbifold(const OrbifoldBundle& o) {
    o.validate();
    SplitBundle s;
    s.curve = o.curve_ptr();
    for (const auto& comp : o.components()) {
        i64 residual = comp.y_degree;
        std::vector<std::vector<Rat>> w;
        w.reserve(o.curve().size());
        for (std::size_t i = 0; i < o.curve().size(); ++i) {
            int level = o.curve().points[i].level;
            residual -= static_cast<i64>(comp.characters[i]) * (o.cover_degree() / level);
            w.push_back({Rat(comp.characters[i], level)});
        }
        s.lines.emplace_back(o.curve_ptr(), 1, residual / o.cover_degree(), std::move(w));
    }
    return s;
}

OrbifoldBundle orb_tensor(const OrbifoldBundle& a, const OrbifoldBundle& b) {
    check_compatible(a, b);
    std::vector<OrbifoldComponent> comps;
    comps.reserve(a.components().size() * b.components().size());
    for (const auto& x : a.components())
        for (const auto& y : b.components())
            comps.push_back(component_tensor(a.curve(), x, y));
    return OrbifoldBundle(a.curve_ptr(), a.cover_degree(), std::move(comps));
}

OrbifoldBundle orb_dual(const OrbifoldBundle& a) {
    std::vector<OrbifoldComponent> comps;
    comps.reserve(a.components().size());
    for (const auto& x : a.components()) {
        OrbifoldComponent c;
        c.y_degree = -x.y_degree;
        for (std::size_t i = 0; i < a.curve().size(); ++i) {
            int level = a.curve().points[i].level;
            c.characters.push_back((level - x.characters[i]) % level);
        }
        comps.push_back(std::move(c));
    }
    return OrbifoldBundle(a.curve_ptr(), a.cover_degree(), std::move(comps));
}

OrbifoldBundle orb_sym(const OrbifoldBundle& a, int k) {
    require(k >= 0, "InvalidArgument", "symmetric power wants k >= 0");
    const int r = static_cast<int>(a.components().size());
    std::vector<OrbifoldComponent> comps;
    OrbifoldComponent unit;
    unit.y_degree = 0;
    unit.characters.assign(a.curve().size(), 0);
    for_each_multiset(r, k, [&](const std::vector<int>& idx) {
        OrbifoldComponent c = unit;
        for (int j : idx) c = component_tensor(a.curve(), c, a.components()[j]);
        comps.push_back(std::move(c));
    });
    return OrbifoldBundle(a.curve_ptr(), a.cover_degree(), std::move(comps));
}

OrbifoldBundle orb_det(const OrbifoldBundle& a) {
    OrbifoldComponent c;
    c.y_degree = 0;
    c.characters.assign(a.curve().size(), 0);
    for (const auto& x : a.components()) c = component_tensor(a.curve(), c, x);
    return OrbifoldBundle(a.curve_ptr(), a.cover_degree(), {c});
}

ThetaCheckReport theta_characteristic_check(CurvePtr curve, i64 cover_degree) {
    ThetaCheckReport rep;
    rep.cover_degree = cover_degree;
    rep.cover_genus = riemann_hurwitz_genus(*curve, cover_degree);
    OrbifoldBundle mirror = to_orbifold(gunning_subline(curve), cover_degree);
    rep.theta_degree_upstairs = mirror.components()[0].y_degree;
    rep.pass = 2 * rep.theta_degree_upstairs == 2 * rep.cover_genus - 2;
    return rep;
}

std::string OracleExpr::to_string() const {
    switch (kind) {
        case Kind::Gunning: return "E";
        case Kind::SubLine: return "L";
        case Kind::QuotientLine: return "Q";
        case Kind::Trivial: return "1";
        case Kind::Tensor:
            return "(" + children[0].to_string() + " * " + children[1].to_string() + ")";
        case Kind::Dual: return "dual(" + children[0].to_string() + ")";
        case Kind::Sym:
            return "sym" + std::to_string(sym_k) + "(" + children[0].to_string() + ")";
        case Kind::Det: return "det(" + children[0].to_string() + ")";
    }
    return "?";
}

LocallyAbelianBundle eval_parabolic(const OracleExpr& e, const CurvePtr& curve) {
    switch (e.kind) {
        case OracleExpr::Kind::Gunning: return gunning(curve);
        case OracleExpr::Kind::SubLine: return gunning_subline(curve);
        case OracleExpr::Kind::QuotientLine: return gunning_quotient_line(curve);
        case OracleExpr::Kind::Trivial: return trivial_line(curve);
        case OracleExpr::Kind::Tensor:
            return tensor(eval_parabolic(e.children[0], curve),
                          eval_parabolic(e.children[1], curve));
        case OracleExpr::Kind::Dual: return dual(eval_parabolic(e.children[0], curve));
        case OracleExpr::Kind::Sym: return sym_pow(eval_parabolic(e.children[0], curve), e.sym_k);
        case OracleExpr::Kind::Det: return det(eval_parabolic(e.children[0], curve));
    }
    fail("Internal", "unhandled expression kind");
}

namespace {

OrbifoldBundle eval_orbifold(const OracleExpr& e, const CurvePtr& curve, i64 d) {
    switch (e.kind) {
        case OracleExpr::Kind::Gunning: return to_orbifold(split_gunning(curve), d);
        case OracleExpr::Kind::SubLine: return to_orbifold(gunning_subline(curve), d);
        case OracleExpr::Kind::QuotientLine: return to_orbifold(gunning_quotient_line(curve), d);
        case OracleExpr::Kind::Trivial: return to_orbifold(trivial_line(curve), d);
        case OracleExpr::Kind::Tensor:
            return orb_tensor(eval_orbifold(e.children[0], curve, d),
                              eval_orbifold(e.children[1], curve, d));
        case OracleExpr::Kind::Dual: return orb_dual(eval_orbifold(e.children[0], curve, d));
        case OracleExpr::Kind::Sym: return orb_sym(eval_orbifold(e.children[0], curve, d), e.sym_k);
        case OracleExpr::Kind::Det: return orb_det(eval_orbifold(e.children[0], curve, d));
    }
    fail("Internal", "unhandled expression kind");
}

int expr_rank(const OracleExpr& e) {
    switch (e.kind) {
        case OracleExpr::Kind::Gunning: return 2;
        case OracleExpr::Kind::SubLine:
        case OracleExpr::Kind::QuotientLine:
        case OracleExpr::Kind::Trivial: return 1;
        case OracleExpr::Kind::Tensor:
            return expr_rank(e.children[0]) * expr_rank(e.children[1]);
        case OracleExpr::Kind::Dual: return expr_rank(e.children[0]);
        case OracleExpr::Kind::Sym: {
            int r = expr_rank(e.children[0]);
            i64 out = 1;
            for (int j = 1; j <= e.sym_k; ++j) out = out * (r + j - 1) / j;
            return static_cast<int>(out);
        }
        case OracleExpr::Kind::Det: return 1;
    }
    return 1;
}

// Random expression with rank kept small enough that symmetric powers stay
// cheap: sym is only applied to rank <= 6 subtrees, tensor products are
// capped at rank 128.
OracleExpr random_expr(Rng& rng, int depth) {
    auto leaf = [&]() {
        OracleExpr e;
        switch (rng.below(4)) {
            case 0: e.kind = OracleExpr::Kind::Gunning; break;
            case 1: e.kind = OracleExpr::Kind::SubLine; break;
            case 2: e.kind = OracleExpr::Kind::QuotientLine; break;
            default: e.kind = OracleExpr::Kind::Trivial; break;
        }
        return e;
    };
    if (depth <= 0 || rng.below(4) == 0) return leaf();
    OracleExpr e;
    switch (rng.below(4)) {
        case 0: {
            e.kind = OracleExpr::Kind::Tensor;
            e.children.push_back(random_expr(rng, depth - 1));
            e.children.push_back(random_expr(rng, depth - 1));
            if (expr_rank(e) > 128) return leaf();
            break;
        }
        case 1: {
            e.kind = OracleExpr::Kind::Dual;
            e.children.push_back(random_expr(rng, depth - 1));
            break;
        }
        case 2: {
            e.kind = OracleExpr::Kind::Sym;
            e.sym_k = static_cast<int>(1 + rng.below(4));
            e.children.push_back(random_expr(rng, depth - 1));
            if (expr_rank(e.children[0]) > 6) e.children[0] = leaf();
            break;
        }
        default: {
            e.kind = OracleExpr::Kind::Det;
            e.children.push_back(random_expr(rng, depth - 1));
            break;
        }
    }
    return e;
}

std::string describe(const LocallyAbelianBundle& v) {
    std::string s = "rank " + std::to_string(v.rank()) + " degree " +
                    std::to_string(v.degree()) + " weights";
    for (std::size_t i = 0; i < v.curve().size(); ++i) {
        s += " [";
        const auto& w = v.weights_at(i);
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (j) s += " ";
            s += w[j].str();
        }
        s += "]";
    }
    return s;
}

} // namespace

LocallyAbelianBundle eval_via_orbifold(const OracleExpr& e, const CurvePtr& curve,
                                       i64 cover_degree) {
    return from_orbifold(eval_orbifold(e, curve, cover_degree)).assemble();
}

namespace {

bool expr_fails(const OracleExpr& e, const CurvePtr& curve, i64 d) {
    return !(eval_parabolic(e, curve) == eval_via_orbifold(e, curve, d));
}

// Smallest failing subexpression: descend as long as some child fails too.
OracleExpr shrink_failure(OracleExpr e, const CurvePtr& curve, i64 d) {
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (const auto& child : e.children)
            if (expr_fails(child, curve, d)) {
                e = child;
                shrunk = true;
                break;
            }
    }
    return e;
}

} // namespace

OracleReport oracle_check(CurvePtr curve, std::uint64_t seed, i64 count) {
    validate_curve(*curve);
    oper_levels_c(*curve);
    i64 d = default_cover_degree(*curve);
    Rng rng(seed);
    OracleReport rep;
    for (i64 i = 0; i < count; ++i) {
        OracleExpr e = random_expr(rng, 4);
        ++rep.checked;
        if (expr_fails(e, curve, d)) {
            OracleExpr minimal = shrink_failure(e, curve, d);
            rep.failures.push_back({minimal, describe(eval_parabolic(minimal, curve)),
                                    describe(eval_via_orbifold(minimal, curve, d))});
        }
    }
    return rep;
}

} // namespace parop

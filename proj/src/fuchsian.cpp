#include "parop/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "parop/oper.hpp"

namespace parop {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Path geometry: loops are built from line segments and circular arcs.

struct Segment {
    // kind 0: line from a to b.  kind 1: arc around center with radius,
    // angle theta0 -> theta1 (either direction).
    int kind = 0;
    cplx a, b;
    cplx center;
    double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

    cplx at(double t) const {
        if (kind == 0) return a + (b - a) * t;
        double th = theta0 + (theta1 - theta0) * t;
        return center + std::polar(radius, th);
    }
    cplx velocity(double t) const {
        if (kind == 0) return b - a;
        double th = theta0 + (theta1 - theta0) * t;
        return std::polar(radius, th) * cplx(0.0, 1.0) * (theta1 - theta0);
    }
};

Segment line(cplx a, cplx b) {
    Segment s;
    s.kind = 0;
    s.a = a;
    s.b = b;
    return s;
}

Segment arc(cplx center, double radius, double th0, double th1) {
    Segment s;
    s.kind = 1;
    s.center = center;
    s.radius = radius;
    s.theta0 = th0;
    s.theta1 = th1;
    return s;
}

double point_segment_distance(const cplx& p, const cplx& a, const cplx& b) {
    cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + ab * t));
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) on matrix-valued flat-section transport:
//   Y'(t) = -A(z(t)) z'(t) Y(t).

using FormFn = std::function<CMat(const cplx&)>;

CMat transport_segment(const FormFn& form, const Segment& seg, int rank, double rtol,
                       CMat y) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto rhs = [&](double t, const CMat& m) {
        return (form(seg.at(t)) * m) * (-seg.velocity(t));
    };

    double t = 0.0;
    double h = 0.05;
    int steps = 0;
    CMat k7(rank);
    bool have_k7 = false;
    while (t < 1.0) {
        if (t + h > 1.0) h = 1.0 - t;
        CMat k1 = have_k7 ? k7 : rhs(t, y);
        CMat k2 = rhs(t + c2 * h, y + k1 * cplx(h * a21, 0.0));
        CMat k3 = rhs(t + c3 * h, y + k1 * cplx(h * a31, 0.0) + k2 * cplx(h * a32, 0.0));
        CMat k4 = rhs(t + c4 * h,
                      y + k1 * cplx(h * a41, 0.0) + k2 * cplx(h * a42, 0.0) +
                          k3 * cplx(h * a43, 0.0));
        CMat k5 = rhs(t + c5 * h,
                      y + k1 * cplx(h * a51, 0.0) + k2 * cplx(h * a52, 0.0) +
                          k3 * cplx(h * a53, 0.0) + k4 * cplx(h * a54, 0.0));
        CMat k6 = rhs(t + h,
                      y + k1 * cplx(h * a61, 0.0) + k2 * cplx(h * a62, 0.0) +
                          k3 * cplx(h * a63, 0.0) + k4 * cplx(h * a64, 0.0) +
                          k5 * cplx(h * a65, 0.0));
        CMat ynew = y + k1 * cplx(h * b1, 0.0) + k3 * cplx(h * b3, 0.0) +
                    k4 * cplx(h * b4, 0.0) + k5 * cplx(h * b5, 0.0) + k6 * cplx(h * b6, 0.0);
        k7 = rhs(t + h, ynew);
        CMat err = k1 * cplx(h * e1, 0.0) + k3 * cplx(h * e3, 0.0) + k4 * cplx(h * e4, 0.0) +
                   k5 * cplx(h * e5, 0.0) + k6 * cplx(h * e6, 0.0) + k7 * cplx(h * e7, 0.0);
        double scale = std::max({1.0, y.max_abs(), ynew.max_abs()});
        double e = err.max_abs() / (rtol * scale);
        if (e <= 1.0) {
            t += h;
            y = ynew;
            have_k7 = true;
        } else {
            have_k7 = false;
        }
        double factor = e > 0.0 ? 0.9 * std::pow(e, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::min(h, 0.5);
        require(h > 1e-13, "IntegrationFailure", "step size underflow on a loop segment");
        require(++steps < 2000000, "IntegrationFailure", "step budget exhausted");
    }
    return y;
}

CMat transport(const FormFn& form, const std::vector<Segment>& path, int rank, double rtol) {
    CMat y = CMat::identity(rank);
    for (const auto& seg : path) y = transport_segment(form, seg, rank, rtol, y);
    return y;
}

// Runs the transport at rtol and rtol/16 and uses the difference as the
// error estimate; tightens until the estimate clears `tol`.
CMat transport_checked(const FormFn& form, const std::vector<Segment>& path, int rank,
                       double tol, double& est_error) {
    double rtol = std::max(tol * 1e-2, 1e-13);
    CMat coarse = transport(form, path, rank, rtol);
    for (int round = 0; round < 6; ++round) {
        CMat fine = transport(form, path, rank, rtol / 16.0);
        est_error = distance(coarse, fine);
        if (est_error <= tol) return fine;
        coarse = fine;
        rtol /= 16.0;
        require(rtol > 1e-15, "IntegrationFailure",
                "cannot reach the requested tolerance");
    }
    fail("IntegrationFailure", "error estimate did not converge below the tolerance");
}

// ---------------------------------------------------------------------------
// Loop construction.  One common base point below the whole configuration;
// every puncture loop is a tent: segment up to the circle, the circle
// counterclockwise, segment back.

struct LoopPlan {
    cplx base;
    std::vector<double> radius;       // per puncture
    double big_radius = 0.0;          // circle around everything, centered at base-x
    cplx big_center;
};

// The approach segment enters each circle at its point nearest the base.
cplx tent_entry(const cplx& base, const cplx& p, double rho) {
    cplx dir = base - p;
    return p + dir * (rho / std::abs(dir));
}

LoopPlan plan_loops(const std::vector<cplx>& punctures) {
    LoopPlan plan;
    double min_re = punctures[0].real(), max_re = punctures[0].real();
    double min_im = punctures[0].imag();
    for (const auto& p : punctures) {
        min_re = std::min(min_re, p.real());
        max_re = std::max(max_re, p.real());
        min_im = std::min(min_im, p.imag());
    }
    double spread = std::max({max_re - min_re, 1.0});
    plan.radius.resize(punctures.size());
    for (std::size_t i = 0; i < punctures.size(); ++i) {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < punctures.size(); ++j)
            if (j != i) d = std::min(d, std::abs(punctures[i] - punctures[j]));
        plan.radius[i] = punctures.size() == 1 ? 0.5 * spread : 0.35 * d;
    }
    // Retry deeper and laterally shifted base points until every approach
    // segment clears every other circle; lateral shifts resolve stacked
    // configurations that depth alone cannot.
    double mid = 0.5 * (min_re + max_re);
    double depth = 2.0 * spread;
    const double shifts[] = {0.0, 0.4, -0.4, 0.8, -0.8, 1.3, -1.3, 2.1};
    bool routed = false;
    for (int attempt = 0; attempt < 24 && !routed; ++attempt) {
        plan.base = cplx(mid + shifts[attempt % 8] * spread, min_im - depth);
        routed = true;
        for (std::size_t i = 0; i < punctures.size() && routed; ++i) {
            cplx entry = tent_entry(plan.base, punctures[i], plan.radius[i]);
            for (std::size_t j = 0; j < punctures.size(); ++j) {
                if (j == i) continue;
                if (point_segment_distance(punctures[j], plan.base, entry) <
                    0.9 * plan.radius[j]) {
                    routed = false;
                    break;
                }
            }
        }
        if (!routed && attempt % 8 == 7) depth *= 2.0;
    }
    require(routed, "IntegrationFailure",
            "could not route loops around the puncture configuration");
    plan.big_center = cplx(mid, 0.0);
    double r = 0.0;
    for (const auto& p : punctures) r = std::max(r, std::abs(p - plan.big_center));
    r = std::max(r, std::abs(plan.base - plan.big_center));
    plan.big_radius = 1.5 * r + 1.0;
    return plan;
}

// Tent loop around puncture i, counterclockwise.
std::vector<Segment> tent_loop(const LoopPlan& plan, const std::vector<cplx>& punctures,
                               std::size_t i) {
    cplx p = punctures[i];
    double rho = plan.radius[i];
    cplx entry = tent_entry(plan.base, p, rho);
    double theta0 = std::arg(entry - p);
    return {line(plan.base, entry), arc(p, rho, theta0, theta0 + 2 * kPi),
            line(entry, plan.base)};
}

// Loop around infinity: down to the big circle, once clockwise, back.
std::vector<Segment> infinity_loop(const LoopPlan& plan) {
    cplx bottom = plan.big_center - cplx(0.0, plan.big_radius);
    return {line(plan.base, bottom), arc(plan.big_center, plan.big_radius, -kPi / 2,
                                         -kPi / 2 - 2 * kPi),
            line(bottom, plan.base)};
}

bool eigenvalues_resonant(const CMat& residue) {
    auto ev = residue.eigenvalues();
    for (std::size_t i = 0; i < ev.size(); ++i)
        for (std::size_t j = i + 1; j < ev.size(); ++j) {
            cplx d = ev[i] - ev[j];
            double nearest = std::round(d.real());
            if (std::abs(d.imag()) < 1e-9 && std::abs(d.real() - nearest) < 1e-9 &&
                std::abs(nearest) > 0.5)
                return true;
        }
    return false;
}

std::vector<cplx> puncture_coordinates(const FuchsianSystem& sys) {
    std::vector<cplx> ps;
    ps.reserve(sys.punctures().size());
    for (const auto& p : sys.punctures()) ps.push_back(p.coordinate);
    return ps;
}

} // namespace

FuchsianSystem::FuchsianSystem(int rank, std::vector<Puncture> punctures)
    : rank_(rank), punctures_(std::move(punctures)) {
    require(rank_ >= 1, "InvalidArgument", "rank must be >= 1");
    require(!punctures_.empty(), "InvalidArgument", "a Fuchsian system needs punctures");
    for (std::size_t i = 0; i < punctures_.size(); ++i) {
        require(punctures_[i].residue.size() == rank_, "InvalidArgument",
                "residue size must match the rank");
        for (std::size_t j = i + 1; j < punctures_.size(); ++j)
            require(punctures_[i].coordinate != punctures_[j].coordinate, "DuplicatePuncture",
                    "two punctures share a coordinate");
    }
}

CMat FuchsianSystem::infinity_residue() const {
    CMat s(rank_);
    for (const auto& p : punctures_) s = s + p.residue;
    return s * cplx(-1.0, 0.0);
}

CMat FuchsianSystem::form_at(const cplx& z) const {
    CMat s(rank_);
    for (const auto& p : punctures_) s = s + p.residue * (1.0 / (z - p.coordinate));
    return s;
}

FuchsianSystem build_fuchsian(int rank, std::vector<Puncture> punctures) {
    return FuchsianSystem(rank, std::move(punctures));
}

FuchsianSystem sym_power_system(const FuchsianSystem& base, int k) {
    require(base.rank() == 2, "UnsupportedRank", "symmetric powers are built from rank 2");
    require(k >= 1, "InvalidArgument", "power must be >= 1");
    std::vector<Puncture> punctures;
    for (const auto& p : base.punctures()) {
        const CMat& m = p.residue;
        // Basis e1^{k-m} e2^m; the residue acts as a derivation.
        CMat s(k + 1);
        for (int col = 0; col <= k; ++col) {
            double up = static_cast<double>(k - col);
            double down = static_cast<double>(col);
            s(col, col) += up * m(0, 0) + down * m(1, 1);
            if (col + 1 <= k) s(col + 1, col) += up * m(1, 0);
            if (col - 1 >= 0) s(col - 1, col) += down * m(0, 1);
        }
        punctures.push_back({p.coordinate, s});
    }
    return FuchsianSystem(k + 1, std::move(punctures));
}

MonodromyResult numerical_monodromy(const FuchsianSystem& sys, std::size_t puncture_index,
                                    double tol) {
    require(puncture_index < sys.punctures().size(), "InvalidArgument",
            "puncture index out of range");
    auto ps = puncture_coordinates(sys);
    LoopPlan plan = plan_loops(ps);
    MonodromyResult res;
    res.resonance_warning = eigenvalues_resonant(sys.punctures()[puncture_index].residue);
    if (res.resonance_warning)
        res.notes.push_back(
            "residue eigenvalues differ by a nonzero integer; the exponential "
            "formula for the local monodromy may fail");
    FormFn form = [&sys](const cplx& z) { return sys.form_at(z); };
    res.matrix = transport_checked(form, tent_loop(plan, ps, puncture_index), sys.rank(), tol,
                                   res.est_error);
    return res;
}

MonodromyResult local_monodromy(const FuchsianSystem& sys, std::size_t puncture_index,
                                double tol) {
    require(puncture_index < sys.punctures().size(), "InvalidArgument",
            "puncture index out of range");
    auto ps = puncture_coordinates(sys);
    LoopPlan plan = plan_loops(ps);
    MonodromyResult res;
    res.resonance_warning = eigenvalues_resonant(sys.punctures()[puncture_index].residue);
    FormFn form = [&sys](const cplx& z) { return sys.form_at(z); };
    std::vector<Segment> loop = {
        arc(ps[puncture_index], plan.radius[puncture_index], -kPi / 2, -kPi / 2 + 2 * kPi)};
    res.matrix = transport_checked(form, loop, sys.rank(), tol, res.est_error);
    return res;
}

MonodromyResult infinity_monodromy(const FuchsianSystem& sys, double tol) {
    auto ps = puncture_coordinates(sys);
    LoopPlan plan = plan_loops(ps);
    MonodromyResult res;
    res.resonance_warning = eigenvalues_resonant(sys.infinity_residue());
    FormFn form = [&sys](const cplx& z) { return sys.form_at(z); };
    res.matrix = transport_checked(form, infinity_loop(plan), sys.rank(), tol, res.est_error);
    return res;
}

ProductCheck monodromy_product_check(const FuchsianSystem& sys, double tol) {
    auto ps = puncture_coordinates(sys);
    // The composite that contracts: rightmost loop first as seen from the
    // base point below the configuration, i.e. ascending angle.
    std::vector<std::size_t> order(ps.size());
    std::iota(order.begin(), order.end(), 0);
    LoopPlan plan = plan_loops(ps);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::arg(ps[a] - plan.base) < std::arg(ps[b] - plan.base);
    });
    CMat prod = CMat::identity(sys.rank());
    for (std::size_t idx : order) {
        MonodromyResult m = numerical_monodromy(sys, idx, tol);
        prod = m.matrix * prod;
    }
    MonodromyResult inf = infinity_monodromy(sys, tol);
    prod = inf.matrix * prod;
    ProductCheck check;
    check.deviation = distance(prod, CMat::identity(sys.rank()));
    check.pass = check.deviation <= 10.0 * tol;
    return check;
}

SpectrumReport monodromy_spectrum_check(const FuchsianSystem& sys, std::size_t puncture_index,
                                        const std::vector<Rat>& expected_weights, double tol,
                                        double cond_threshold) {
    require(static_cast<int>(expected_weights.size()) == sys.rank(), "InvalidArgument",
            "need one expected weight per rank");
    // The eigenvalue multiset is base-point free, so use the bare circle:
    // it keeps the transported matrix well conditioned.
    MonodromyResult m = local_monodromy(sys, puncture_index, tol);
    SpectrumReport rep;
    rep.resonance_warning = m.resonance_warning;
    rep.computed = m.matrix.eigenvalues();
    for (const auto& w : expected_weights)
        rep.expected.push_back(std::exp(cplx(0.0, -2.0 * kPi * w.to_double())));
    rep.max_error = multiset_match_distance(rep.computed, rep.expected);
    EigenDecomposition eig = eigen_decompose(m.matrix);
    rep.eigenvector_condition = eig.condition;
    rep.semisimple = eig.complete && eig.condition < cond_threshold;
    rep.pass = rep.max_error <= tol && rep.semisimple;
    return rep;
}

IrreducibilityReport irreducibility_check(const FuchsianSystem& sys, double tol) {
    require(sys.rank() == 2, "UnsupportedRank", "the invariant-line search is rank-2 only");
    std::vector<CMat> monos;
    for (std::size_t i = 0; i < sys.punctures().size(); ++i)
        monos.push_back(numerical_monodromy(sys, i, tol).matrix);

    // Candidate invariant lines: eigenvectors of each monodromy.
    auto sine_angle = [](const std::vector<cplx>& v, const std::vector<cplx>& w) {
        cplx dot(0.0, 0.0);
        double nv = 0.0, nw = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            dot += std::conj(v[i]) * w[i];
            nv += std::norm(v[i]);
            nw += std::norm(w[i]);
        }
        double cos2 = std::norm(dot) / (nv * nw);
        return std::sqrt(std::max(0.0, 1.0 - cos2));
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : monos) {
        EigenDecomposition eig = eigen_decompose(m);
        for (const auto& v : eig.vectors) {
            double worst = 0.0;
            for (const auto& other : monos) {
                std::vector<cplx> image(v.size(), cplx(0.0, 0.0));
                for (int i = 0; i < other.size(); ++i)
                    for (int j = 0; j < other.size(); ++j) image[i] += other(i, j) * v[j];
                worst = std::max(worst, sine_angle(v, image));
            }
            best = std::min(best, worst);
        }
    }
    IrreducibilityReport rep;
    rep.min_invariance_angle = best;
    rep.irreducible = best > std::max(tol, 1e-8);
    return rep;
}

// ---------------------------------------------------------------------------
// Scalar operators.

MonicOperator make_monic_operator(int order, std::vector<RatFn> coeffs) {
    require(order >= 1, "InvalidArgument", "operator order must be >= 1");
    require(static_cast<int>(coeffs.size()) == order, "InvalidArgument",
            "need exactly `order` lower coefficients a_0..a_{r-1}");
    return MonicOperator{order, std::move(coeffs)};
}

namespace {

// Signed Stirling numbers of the first kind: z(z-1)...(z-j+1) = sum_k s(j,k) z^k.
std::vector<std::vector<Rat>> stirling_first(int n) {
    std::vector<std::vector<Rat>> s(n + 1, std::vector<Rat>(n + 1, Rat(0)));
    s[0][0] = Rat(1);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k <= j; ++k) {
            Rat v = k >= 1 ? s[j - 1][k - 1] : Rat(0);
            s[j][k] = v - Rat(j - 1) * s[j - 1][k];
        }
    return s;
}

// Regularity data at p: the functions b_j(z) = a_j(z) (z-p)^{r-j}, all
// holomorphic at p when the singularity is regular.
std::vector<RatFn> regularised_coefficients(const MonicOperator& op, const Rat& p) {
    std::vector<RatFn> out;
    out.reserve(op.order);
    for (int j = 0; j < op.order; ++j) {
        RatFn b = op.a(j);
        for (int i = 0; i < op.order - j; ++i)
            b = b * RatFn(Poly::linear_root(p), Poly::constant(Rat(1)));
        require(b.pole_order(p) == 0, "IrregularSingularity",
                "coefficient of order " + std::to_string(j) +
                    " has a pole of order > " + std::to_string(op.order - j));
        out.push_back(std::move(b));
    }
    return out;
}

} // namespace

std::vector<std::vector<Rat>> companion_residue(const MonicOperator& op, const Rat& p) {
    const int r = op.order;
    auto breg = regularised_coefficients(op, p);
    auto s = stirling_first(r);
    // theta^r y = -sum_{k<r} B_k theta^k y with
    // B_k = s(r,k) + sum_j b_j(p) s(j,k).
    std::vector<Rat> bigB(r, Rat(0));
    for (int k = 0; k < r; ++k) {
        bigB[k] = s[r][k];
        for (int j = k; j < r; ++j) bigB[k] += breg[j].eval(p) * s[j][k];
    }
    std::vector<std::vector<Rat>> m(r, std::vector<Rat>(r, Rat(0)));
    for (int i = 0; i + 1 < r; ++i) m[i][i + 1] = Rat(1); // theta w_i = w_{i+1}
    for (int k = 0; k < r; ++k) m[r - 1][k] = -bigB[k];
    return m;
}

CMat companion_residue_matrix(const MonicOperator& op, const Rat& p) {
    auto m = companion_residue(op, p);
    CMat c(op.order);
    for (int i = 0; i < op.order; ++i)
        for (int j = 0; j < op.order; ++j) c(i, j) = cplx(m[i][j].to_double(), 0.0);
    return c;
}

Poly indicial_polynomial(const MonicOperator& op, const Rat& p) {
    const int r = op.order;
    auto breg = regularised_coefficients(op, p);
    auto s = stirling_first(r);
    std::vector<Rat> coeffs(r + 1, Rat(0));
    for (int k = 0; k <= r; ++k) coeffs[k] = s[r][k];
    for (int j = 0; j < r; ++j) {
        Rat v = breg[j].eval(p);
        for (int k = 0; k <= j; ++k) coeffs[k] += v * s[j][k];
    }
    return Poly(std::move(coeffs));
}

std::vector<cplx> indicial_polynomial_numeric(const MonicOperator& op, const cplx& p) {
    const int r = op.order;
    auto s = stirling_first(r);
    std::vector<cplx> coeffs(r + 1, cplx(0.0, 0.0));
    for (int k = 0; k <= r; ++k) coeffs[k] = cplx(s[r][k].to_double(), 0.0);
    // b_j(p) by a limit-free evaluation: multiply numerator by (z-p)^{r-j}
    // numerically via deflation of the denominator where possible.
    for (int j = 0; j < r; ++j) {
        const RatFn& a = op.a(j);
        // order of vanishing of den at p, numerically
        auto mult_at = [&](const Poly& poly) {
            int m = 0;
            std::vector<cplx> c;
            for (const auto& x : poly.coeffs()) c.emplace_back(x.to_double(), 0.0);
            double scale = 0.0;
            for (const auto& x : c) scale = std::max(scale, std::abs(x));
            while (static_cast<int>(c.size()) > 1) {
                // synthetic division by (z - p)
                std::vector<cplx> q(c.size() - 1);
                cplx carry = c.back();
                for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
                    q[i] = carry;
                    carry = c[i] + carry * p;
                }
                if (std::abs(carry) > 1e-9 * std::max(scale, 1.0)) break;
                c = q;
                ++m;
            }
            return std::pair<int, std::vector<cplx>>(m, c);
        };
        auto [dm, dq] = mult_at(a.den());
        auto [nm, nq] = mult_at(a.num());
        int pole = dm - nm;
        require(pole <= r - j, "IrregularSingularity",
                "coefficient of order " + std::to_string(j) + " has a pole of order " +
                    std::to_string(pole) + " > " + std::to_string(r - j));
        // value of a_j(z) (z-p)^{r-j} at p
        auto horner = [&](const std::vector<cplx>& c) {
            cplx acc(0.0, 0.0);
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * p + *it;
            return acc;
        };
        // a_j(z) (z-p)^{r-j} vanishes at p unless the pole is maximal.
        cplx v(0.0, 0.0);
        if (pole == r - j) v = horner(nq) / horner(dq);
        for (int k = 0; k <= j; ++k) coeffs[k] += v * cplx(s[j][k].to_double(), 0.0);
    }
    return coeffs;
}

IndicialRoots indicial_roots(const MonicOperator& op, const Rat& p) {
    PolyRoots roots = rational_then_numeric_roots(indicial_polynomial(op, p));
    return IndicialRoots{roots.exact, roots.inexact};
}

std::vector<cplx> IndicialRoots::all() const {
    std::vector<cplx> v;
    for (const auto& r : exact) v.emplace_back(r.to_double(), 0.0);
    for (const auto& r : inexact) v.push_back(r);
    return v;
}

std::vector<cplx> indicial_roots_numeric(const MonicOperator& op, const cplx& p) {
    return complex_roots(indicial_polynomial_numeric(op, p));
}

MonodromyResult companion_monodromy(const MonicOperator& op, const Rat& p, double tol) {
    const int r = op.order;
    auto breg = regularised_coefficients(op, p);
    auto s = stirling_first(r);
    cplx pc(p.to_double(), 0.0);

    // Poles of the coefficients away from p bound the loop radius.
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < r; ++j) {
        if (op.a(j).den().degree() < 1) continue;
        std::vector<cplx> dc;
        for (const auto& x : op.a(j).den().coeffs()) dc.emplace_back(x.to_double(), 0.0);
        for (const auto& root : complex_roots(dc)) {
            double d = std::abs(root - pc);
            if (d > 1e-9) nearest = std::min(nearest, d);
        }
    }
    double rho = std::isfinite(nearest) ? 0.5 * nearest : 1.0;

    // theta-form system: theta w = C(z) w with C holomorphic at p;
    // connection transport uses dw/dz = -C(z)/(z - p) w.
    FormFn form = [&, r](const cplx& z) {
        CMat c(r);
        for (int i = 0; i + 1 < r; ++i) c(i, i + 1) = 1.0;
        for (int k = 0; k < r; ++k) {
            cplx bk(s[r][k].to_double(), 0.0);
            for (int j = k; j < r; ++j)
                bk += breg[j].eval(z) * cplx(s[j][k].to_double(), 0.0);
            c(r - 1, k) = -bk;
        }
        return c * (1.0 / (z - pc));
    };
    MonodromyResult res;
    res.resonance_warning = eigenvalues_resonant(companion_residue_matrix(op, p));
    std::vector<Segment> loop = {arc(pc, rho, 0.0, 2 * kPi)};
    res.matrix = transport_checked(form, loop, r, tol, res.est_error);
    return res;
}

RatFn subprincipal_form(const MonicOperator& op) { return -op.a(op.order - 1); }

MonicOperator gauge_by_power(const MonicOperator& op, const Rat& p, i64 m) {
    const int r = op.order;
    // (z-p)^{-m} o L o (z-p)^m: coefficients pick up falling-factorial
    // multiples of (z-p)^{-i}:
    //   b_k = sum_{j >= k} C(j, k) a_j * m(m-1)...(m-(j-k)+1) / (z-p)^{j-k},
    // with a_r = 1.
    auto falling = [&](i64 mm, int i) {
        Rat v(1);
        for (int t = 0; t < i; ++t) v *= Rat(mm - t);
        return v;
    };
    auto binom = [](int nn, int kk) {
        Rat v(1);
        for (int t = 1; t <= kk; ++t) v = v * Rat(nn - kk + t) / Rat(t);
        return v;
    };
    RatFn inv_linear(Poly::constant(Rat(1)), Poly::linear_root(p));
    std::vector<RatFn> out;
    out.reserve(r);
    for (int k = 0; k < r; ++k) {
        RatFn bk = RatFn::constant(Rat(0));
        for (int j = k; j <= r; ++j) {
            RatFn aj = j == r ? RatFn::constant(Rat(1)) : op.a(j);
            RatFn term = aj * RatFn::constant(binom(j, k) * falling(m, j - k));
            for (int i = 0; i < j - k; ++i) term = term * inv_linear;
            bk = bk + term;
        }
        out.push_back(std::move(bk));
    }
    return make_monic_operator(r, std::move(out));
}

MonicOperator riemann_operator(const std::array<Rat, 3>& points,
                               const std::array<std::pair<Rat, Rat>, 3>& exponents) {
    Rat total(0);
    for (const auto& [a, b] : exponents) total += a + b;
    require(total == Rat(1), "InvalidArgument",
            "exponent sum must be 1 for an ordinary point at infinity");
    RatFn one = RatFn::constant(Rat(1));
    RatFn a1 = RatFn::constant(Rat(0));
    RatFn a0 = RatFn::constant(Rat(0));
    Poly prod = Poly::constant(Rat(1));
    for (const auto& p : points) prod = prod * Poly::linear_root(p);
    for (int i = 0; i < 3; ++i) {
        const auto& [al, be] = exponents[static_cast<std::size_t>(i)];
        a1 = a1 + RatFn(Poly::constant(Rat(1) - al - be), Poly::linear_root(points[static_cast<std::size_t>(i)]));
        Rat cross(1);
        for (int j = 0; j < 3; ++j)
            if (j != i) cross *= points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)];
        a0 = a0 + RatFn(Poly::constant(al * be * cross), Poly::linear_root(points[static_cast<std::size_t>(i)]));
    }
    a0 = a0 * RatFn(Poly::constant(Rat(1)), prod);
    return make_monic_operator(2, {a0, a1});
}

MonicOperator symmetric_square_order2(const MonicOperator& op) {
    require(op.order == 2, "InvalidArgument", "symmetric square wants an order-2 operator");
    require(op.a(1).is_zero(), "InvalidArgument",
            "symmetric square is implemented for trace-free operators");
    // Solutions of d^2 + q: products satisfy w''' + 4 q w' + 2 q' w.
    RatFn q = op.a(0);
    RatFn zero = RatFn::constant(Rat(0));
    return make_monic_operator(
        3, {q.derivative() * RatFn::constant(Rat(2)), q * RatFn::constant(Rat(4)), zero});
}

ExponentConsistencyReport oper_exponent_consistency(const CurvePtr& curve, int r,
                                                    const MonicOperator& op, double tol) {
    require(curve->genus == 0, "InvalidArgument", "the operator lab lives at genus 0");
    require(op.order == r, "InvalidArgument", "operator order must match the rank");
    std::vector<cplx> coords;
    for (const auto& p : curve->points) {
        require(p.coordinate.has_value(), "InvalidArgument",
                "marked points need coordinates for the operator lab");
        coords.push_back(*p.coordinate);
    }

    // Every pole of every coefficient must sit at a marked point.  The
    // denominators carry roots with multiplicity, so instead of root
    // finding, peel off the known linear factors by synthetic division and
    // demand that nothing of positive degree survives.
    for (int j = 0; j < r; ++j) {
        const Poly& den = op.a(j).den();
        if (den.degree() < 1) continue;
        std::vector<cplx> dc;
        for (const auto& x : den.coeffs()) dc.emplace_back(x.to_double(), 0.0);
        double scale = 0.0;
        for (const auto& x : dc) scale = std::max(scale, std::abs(x));
        bool stripped = true;
        while (dc.size() > 1 && stripped) {
            stripped = false;
            for (const auto& c : coords) {
                std::vector<cplx> q(dc.size() - 1);
                cplx carry = dc.back();
                for (int i = static_cast<int>(dc.size()) - 2; i >= 0; --i) {
                    q[static_cast<std::size_t>(i)] = carry;
                    carry = dc[static_cast<std::size_t>(i)] + carry * c;
                }
                if (std::abs(carry) < 1e-9 * std::max(scale, 1.0)) {
                    dc = q;
                    stripped = true;
                    break;
                }
            }
        }
        require(dc.size() == 1, "SingularityMismatch", "coefficient pole at an unmarked point");
    }

    ExponentConsistencyReport rep;
    rep.subprincipal_vanishes = op.a(r - 1).is_zero();
    rep.pass = rep.subprincipal_vanishes;
    double root_sum = 0.0;
    for (std::size_t i = 0; i < curve->points.size(); ++i) {
        ExponentPointReport pr;
        pr.label = curve->points[i].label;
        pr.roots = indicial_roots_numeric(op, coords[i]);
        pr.expected_weights = residue_spectrum(curve, r, pr.label);
        std::vector<cplx> lhs, rhs;
        for (const auto& root : pr.roots) {
            root_sum += root.real();
            lhs.push_back(std::exp(cplx(0.0, -2.0 * kPi) * root));
        }
        for (const auto& w : pr.expected_weights)
            rhs.push_back(std::exp(cplx(0.0, -2.0 * kPi * w.to_double())));
        pr.max_error = multiset_match_distance(lhs, rhs);
        pr.pass = pr.max_error <= tol;
        rep.pass = rep.pass && pr.pass;
        rep.points.push_back(std::move(pr));
    }
    rep.fuchs_sum = root_sum;
    rep.fuchs_expected =
        static_cast<double>(curve->points.size()) * r * (r - 1) / 2.0;
    rep.fuchs_ok = std::abs(rep.fuchs_sum - rep.fuchs_expected) <= tol * r * 10.0;
    rep.pass = rep.pass && rep.fuchs_ok;
    return rep;
}

} // namespace parop

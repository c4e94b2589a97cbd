#include "parop/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace parop {

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

cplx Poly::eval(const cplx& x) const {
    cplx acc(0.0, 0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + cplx(it->to_double(), 0.0);
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> d;
    d.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rat(static_cast<i64>(i)));
    return Poly(std::move(d));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
    std::vector<Rat> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(-x);
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly Poly::scaled(const Rat& s) const {
    std::vector<Rat> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(x * s);
    return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    require(!b.is_zero(), "DivisionByZero", "polynomial division by zero");
    std::vector<Rat> rem = a.c_;
    std::vector<Rat> quot;
    int db = b.degree();
    if (a.degree() >= db) quot.assign(a.degree() - db + 1, Rat(0));
    while (static_cast<int>(rem.size()) - 1 >= db) {
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        if (static_cast<int>(rem.size()) - 1 < db) break;
        Rat f = rem.back() / b.leading();
        int shift = static_cast<int>(rem.size()) - 1 - db;
        quot[shift] = f;
        for (int i = 0; i <= db; ++i) rem[shift + i] -= f * b.c_[i];
    }
    q = Poly(std::move(quot));
    r = Poly(std::move(rem));
}

Poly Poly::primitive() const {
    if (is_zero()) return *this;
    i64 denom_lcm = 1;
    for (const auto& c : c_) denom_lcm = std::lcm(denom_lcm, c.den());
    i64 content = 0;
    for (const auto& c : c_) content = std::gcd(content, (c * Rat(denom_lcm)).num());
    Rat scale(denom_lcm, content);
    Poly p = scaled(leading() < Rat(0) ? -scale : scale);
    return p;
}

namespace {

// All rational roots of p with multiplicities, plus the root-free residual
// factor.  Rational-root-theorem candidates on the integer-primitive model.
std::pair<std::vector<std::pair<Rat, int>>, Poly> split_rational_roots(const Poly& p) {
    std::vector<std::pair<Rat, int>> found;
    Poly work = p;
    bool progress = true;
    while (progress && work.degree() >= 1) {
        progress = false;
        Poly prim = work.primitive();
        const auto& w = prim.coeffs();
        int low = 0;
        while (low < static_cast<int>(w.size()) && w[static_cast<std::size_t>(low)].is_zero())
            ++low;
        if (low > 0) {
            found.emplace_back(Rat(0), low);
            work = work.deflate(Rat(0), low);
            progress = true;
            continue;
        }
        i64 a0 = std::abs(w.front().num());
        i64 an = std::abs(w.back().num());
        auto divisors = [](i64 v) {
            std::vector<i64> ds;
            for (i64 i = 1; i * i <= v; ++i)
                if (v % i == 0) {
                    ds.push_back(i);
                    if (i != v / i) ds.push_back(v / i);
                }
            return ds;
        };
        for (i64 q : divisors(a0)) {
            for (i64 s : divisors(an)) {
                for (int sign : {1, -1}) {
                    Rat cand(sign * q, s);
                    int m = work.root_multiplicity(cand);
                    if (m > 0) {
                        found.emplace_back(cand, m);
                        work = work.deflate(cand, m);
                        progress = true;
                    }
                    if (work.degree() < 1) break;
                }
                if (work.degree() < 1) break;
            }
            if (work.degree() < 1) break;
        }
    }
    return {std::move(found), std::move(work)};
}

} // namespace

int Poly::root_multiplicity(const Rat& a) const {
    if (is_zero()) return 0;
    Poly p = *this;
    int m = 0;
    while (!p.is_zero() && p.eval(a).is_zero()) {
        Poly q, r;
        divmod(p, linear_root(a), q, r);
        p = std::move(q);
        ++m;
    }
    return m;
}

Poly Poly::deflate(const Rat& a, int m) const {
    Poly p = *this;
    for (int i = 0; i < m; ++i) {
        Poly q, r;
        divmod(p, linear_root(a), q, r);
        require(r.is_zero(), "Internal", "deflation by a non-root");
        p = std::move(q);
    }
    return p;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += c_[i].str();
        if (i >= 1) s += "*" + var;
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    require(!den_.is_zero(), "DivisionByZero", "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(Rat(1));
        return;
    }
    for (const auto& [root, den_mult] : split_rational_roots(den_).first) {
        int k = std::min(den_mult, num_.root_multiplicity(root));
        if (k > 0) {
            num_ = num_.deflate(root, k);
            den_ = den_.deflate(root, k);
        }
    }
    Poly dprim = den_.primitive();
    num_ = num_.scaled(dprim.leading() / den_.leading());
    den_ = std::move(dprim);
}

Rat RatFn::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    require(!d.is_zero(), "DivisionByZero", "evaluation at a pole");
    return num_.eval(x) / d;
}

RatFn operator+(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
}
RatFn operator/(const RatFn& a, const RatFn& b) {
    require(!b.is_zero(), "DivisionByZero", "division by the zero function");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
}

RatFn RatFn::derivative() const {
    return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RatFn::str(const std::string& var) const {
    if (den_ == Poly::constant(Rat(1))) return num_.str(var);
    return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

std::vector<cplx> complex_roots(std::vector<cplx> coeffs) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    require(coeffs.size() >= 1, "InvalidArgument", "root finding on the zero polynomial");
    int n = static_cast<int>(coeffs.size()) - 1;
    if (n == 0) return {};
    cplx lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    double scale = 1.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(coeffs[i]));
    auto eval = [&](const cplx& x) {
        cplx acc(0.0, 0.0);
        for (int i = n; i >= 0; --i) acc = acc * x + coeffs[i];
        return acc;
    };
    // Durand-Kerner from a spiral of distinct starting points.
    std::vector<cplx> roots(n);
    cplx seed(0.4, 0.9);
    cplx acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        roots[i] = acc * (1.0 + scale);
    }
    for (int iter = 0; iter < 800; ++iter) {
        bool done = true;
        for (int i = 0; i < n; ++i) {
            cplx denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            cplx delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            if (std::abs(delta) > 1e-14 * (1.0 + std::abs(roots[i]))) done = false;
        }
        if (done) break;
    }
    return roots;
}

PolyRoots rational_then_numeric_roots(const Poly& p) {
    require(!p.is_zero(), "InvalidArgument", "root finding on the zero polynomial");
    PolyRoots out;
    auto [found, residual] = split_rational_roots(p);
    for (const auto& [root, mult] : found)
        for (int i = 0; i < mult; ++i) out.exact.push_back(root);
    if (residual.degree() >= 1) {
        std::vector<cplx> cc;
        for (const auto& c : residual.coeffs()) cc.emplace_back(c.to_double(), 0.0);
        out.inexact = complex_roots(std::move(cc));
    }
    std::sort(out.exact.begin(), out.exact.end());
    return out;
}

} // namespace parop

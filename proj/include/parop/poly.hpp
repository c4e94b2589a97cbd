#pragma once

#include <complex>
#include <vector>

#include "parop/rational.hpp"

namespace parop {

using cplx = std::complex<double>;

// Dense univariate polynomial over the exact rationals, coefficients in
// ascending order, trailing zeros trimmed, zero polynomial = empty vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& a) { return Poly({a}); }
    // z - a
    static Poly linear_root(const Rat& a) { return Poly({-a, Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
    }
    Rat leading() const { return is_zero() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const;
    cplx eval(const cplx& x) const;

    Poly derivative() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const Rat& s) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Quotient and remainder by a nonzero divisor.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

    // Integer-primitive scalar multiple (positive leading coefficient).
    Poly primitive() const;

    // Multiplicity of the rational root a (0 if not a root).
    int root_multiplicity(const Rat& a) const;

    // Divides out (z - a)^m; requires exact divisibility.
    Poly deflate(const Rat& a, int m) const;

    std::string str(const std::string& var = "z") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Rational function num/den; the denominator is integer-primitive with a
// positive leading coefficient.  Reduction cancels all common factors
// (z - a) with rational a — in this library denominators are products of
// such factors (marked points and punctures are rational), so this fully
// reduces every value that actually arises while keeping coefficients
// bounded.
class RatFn {
public:
    RatFn() : num_(), den_(Poly::constant(Rat(1))) {}
    RatFn(Poly num, Poly den);
    static RatFn constant(const Rat& a) { return RatFn(Poly::constant(a), Poly::constant(Rat(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    cplx eval(const cplx& x) const { return num_.eval(x) / den_.eval(x); }
    Rat eval(const Rat& x) const;

    // Order of the pole at the rational point a (0 when regular there).
    int pole_order(const Rat& a) const { return den_.root_multiplicity(a); }

    friend RatFn operator+(const RatFn& a, const RatFn& b);
    friend RatFn operator-(const RatFn& a, const RatFn& b);
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    RatFn operator-() const { return RatFn(-num_, den_); }
    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFn derivative() const;

    std::string str(const std::string& var = "z") const;

private:
    Poly num_;
    Poly den_;
};

// All complex roots of a monic-normalised complex polynomial, by the
// Durand-Kerner iteration.  Coefficients ascending, leading nonzero.
std::vector<cplx> complex_roots(std::vector<cplx> coeffs);

struct PolyRoots {
    std::vector<Rat> exact;   // rational roots, with multiplicity
    std::vector<cplx> inexact; // remaining roots, numeric
    bool all_exact() const { return inexact.empty(); }
};

// Rational roots are split off exactly (rational root theorem plus
// deflation); whatever irreducible part remains is solved numerically.
PolyRoots rational_then_numeric_roots(const Poly& p);

} // namespace parop

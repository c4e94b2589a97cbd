#include "parop/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "parop/poly.hpp"

namespace parop {

CMat operator+(const CMat& x, const CMat& y) {
    CMat r(x.n_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
}

CMat operator-(const CMat& x, const CMat& y) {
    CMat r(x.n_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
}

CMat operator*(const CMat& x, const CMat& y) {
    require(x.n_ == y.n_, "InvalidArgument", "matrix size mismatch");
    CMat r(x.n_);
    for (int i = 0; i < x.n_; ++i)
        for (int k = 0; k < x.n_; ++k) {
            cplx v = x(i, k);
            if (v == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < x.n_; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

CMat CMat::operator*(const cplx& s) const {
    CMat r(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

cplx CMat::trace() const {
    cplx t(0.0, 0.0);
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double CMat::frobenius() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMat::max_abs() const {
    double s = 0.0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

CMat CMat::inverse() const {
    int n = n_;
    CMat a = *this;
    CMat inv = CMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        require(std::abs(a(pivot, col)) > 1e-300, "SingularMatrix",
                "matrix is numerically singular");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        cplx d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = a(r, col);
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

std::vector<cplx> CMat::char_poly() const {
    // Faddeev-LeVerrier: exactly the right tool at these sizes.
    int n = n_;
    std::vector<cplx> c(n + 1, cplx(0.0, 0.0));
    c[n] = 1.0;
    CMat b = CMat::identity(n);
    for (int k = 1; k <= n; ++k) {
        b = (*this) * b;
        cplx ck = -b.trace() / static_cast<double>(k);
        c[n - k] = ck;
        for (int i = 0; i < n; ++i) b(i, i) += ck;
    }
    return c;
}

std::vector<cplx> CMat::eigenvalues() const {
    // Balance first (diagonal similarity by powers of two): characteristic
    // coefficients of an unbalanced matrix cancel catastrophically.
    CMat a = *this;
    int n = n_;
    for (int sweep = 0; sweep < 20; ++sweep) {
        bool converged = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(a(i, j));
                c += std::abs(a(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
            while (c > r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
            if (f != 1.0) {
                converged = false;
                for (int j = 0; j < n; ++j) {
                    a(i, j) /= f; // row i scaled down
                    a(j, i) *= f; // column i scaled up
                }
            }
        }
        if (converged) break;
    }
    std::vector<cplx> coeffs = a.char_poly();
    std::vector<cplx> roots = complex_roots(coeffs);
    // A root of multiplicity m comes back as a noise cloud of radius
    // ~eps^(1/m).  It is a simple root of the (m-1)-st derivative, where
    // Newton recovers it to machine precision, so cluster and repolish.
    // Eigenvalue gaps in this library are never as small as the cluster
    // radius, so only true repeats merge.
    auto derivative = [](std::vector<cplx> c) {
        for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = c[k] * static_cast<double>(k);
        c.pop_back();
        return c;
    };
    auto eval = [](const std::vector<cplx>& c, const cplx& x) {
        cplx acc(0.0, 0.0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    std::vector<cplx> merged;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        for (std::size_t pos = 0; pos < cluster.size(); ++pos)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                if (!used[j] && std::abs(roots[cluster[pos]] - roots[j]) <
                                    1e-5 * (1.0 + std::abs(roots[j]))) {
                    used[j] = true;
                    cluster.push_back(j);
                }
        cplx center(0.0, 0.0);
        for (std::size_t k : cluster) center += roots[k];
        center /= static_cast<double>(cluster.size());
        if (cluster.size() > 1) {
            std::vector<cplx> p = coeffs;
            for (std::size_t k = 1; k < cluster.size(); ++k) p = derivative(p);
            std::vector<cplx> dp = derivative(p);
            cplx x = center;
            for (int it = 0; it < 8; ++it) {
                cplx d = eval(dp, x);
                if (std::abs(d) < 1e-300) break;
                x -= eval(p, x) / d;
            }
            if (std::abs(x - center) < 1e-4 * (1.0 + std::abs(center))) center = x;
        }
        for (std::size_t k = 0; k < cluster.size(); ++k) merged.push_back(center);
    }
    return merged;
}

std::vector<std::vector<cplx>> CMat::null_space(double tol) const {
    int n = n_;
    CMat a = *this;
    double scale = std::max(a.max_abs(), 1e-30);
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pr = row;
        for (int r = row + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pr, col))) pr = r;
        if (std::abs(a(pr, col)) <= tol * scale) continue;
        if (pr != row)
            for (int j = 0; j < n; ++j) std::swap(a(pr, j), a(row, j));
        cplx d = a(row, col);
        for (int j = 0; j < n; ++j) a(row, j) /= d;
        for (int r = 0; r < n; ++r) {
            if (r == row) continue;
            cplx f = a(r, col);
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) a(r, j) -= f * a(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<std::vector<cplx>> basis;
    for (int col = 0; col < n; ++col) {
        if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
        std::vector<cplx> v(n, cplx(0.0, 0.0));
        v[col] = 1.0;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a(static_cast<int>(r), col);
        double norm = 0.0;
        for (const auto& x : v) norm += std::norm(x);
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    return basis;
}

double distance(const CMat& x, const CMat& y) { return (x - y).max_abs(); }

EigenDecomposition eigen_decompose(const CMat& m, double cluster_tol) {
    EigenDecomposition d;
    d.values = m.eigenvalues();
    double scale = std::max(1.0, m.max_abs());
    std::vector<cplx> distinct;
    for (const auto& v : d.values) {
        bool seen = false;
        for (const auto& u : distinct)
            if (std::abs(u - v) <= cluster_tol * scale) { seen = true; break; }
        if (!seen) distinct.push_back(v);
    }
    int n = m.size();
    for (const auto& lambda : distinct) {
        CMat shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
        for (auto& v : shifted.null_space(1e-9)) d.vectors.push_back(std::move(v));
    }
    d.complete = static_cast<int>(d.vectors.size()) == n;
    if (d.complete) {
        CMat v(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) v(i, j) = d.vectors[j][i];
        try {
            d.condition = v.frobenius() * v.inverse().frobenius();
        } catch (const Error&) {
            d.complete = false;
            d.condition = std::numeric_limits<double>::infinity();
        }
    } else {
        d.condition = std::numeric_limits<double>::infinity();
    }
    return d;
}

double multiset_match_distance(std::vector<cplx> a, std::vector<cplx> b) {
    require(a.size() == b.size(), "InvalidArgument", "multiset size mismatch");
    int n = static_cast<int>(a.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace parop

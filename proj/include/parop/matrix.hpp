#pragma once

#include <complex>
#include <vector>

#include "parop/error.hpp"

namespace parop {

using cplx = std::complex<double>;

// Dense square complex matrix, small orders only (monodromy ranks).
class CMat {
public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0)) {}

    static CMat identity(int n) {
        CMat m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int size() const { return n_; }
    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    friend CMat operator+(const CMat& x, const CMat& y);
    friend CMat operator-(const CMat& x, const CMat& y);
    friend CMat operator*(const CMat& x, const CMat& y);
    CMat operator*(const cplx& s) const;

    cplx trace() const;
    double frobenius() const;
    double max_abs() const;

    CMat inverse() const; // Gauss-Jordan with partial pivoting

    // Monic characteristic polynomial coefficients, ascending:
    // c[0] + c[1] t + ... + c[n-1] t^{n-1} + t^n  (c[n] = 1 included).
    std::vector<cplx> char_poly() const;

    std::vector<cplx> eigenvalues() const;

    // Basis of the numerical null space at relative threshold `tol`.
    std::vector<std::vector<cplx>> null_space(double tol) const;

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

double distance(const CMat& x, const CMat& y); // max-abs of the difference

struct EigenDecomposition {
    std::vector<cplx> values;
    std::vector<std::vector<cplx>> vectors; // geometric eigenvectors, concatenated
    bool complete = false;                  // sum of geometric multiplicities == n
    double condition = 0.0;                 // Frobenius condition of the eigenvector matrix
};

// Eigenvalues by characteristic polynomial, eigenvectors from null spaces
// of the shifted matrix, with eigenvalues clustered at `cluster_tol`.
EigenDecomposition eigen_decompose(const CMat& m, double cluster_tol = 1e-8);

// Best max-abs matching distance between two multisets of complex numbers
// (brute force over permutations; sizes stay tiny here).
double multiset_match_distance(std::vector<cplx> a, std::vector<cplx> b);

} // namespace parop

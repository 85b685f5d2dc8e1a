#pragma once

#include <cstddef>
#include <vector>

namespace shockbayes {

using Vec = std::vector<double>;

// Small dense row-major matrix. Everything in this project is p x p with
// p <= degree+1 or n x p with small p, so no effort is spent on blocking.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }
    const std::vector<double>& data() const { return d_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

// Symmetric matrix, full row-major storage. Construction verifies symmetry
// to 1e-12 relative.
class SymMatrix {
public:
    SymMatrix() = default;
    SymMatrix(std::size_t dim, std::vector<double> entries);
    static SymMatrix identity(std::size_t dim);

    std::size_t dim() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }
    const std::vector<double>& data() const { return d_; }

    SymMatrix scaled(double c) const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

// Lower-triangular Cholesky factor, m = L L'. Throws NotPositiveDefinite if a
// pivot is not strictly positive (degenerate posterior, e.g. s^2 = 0).
Matrix cholesky(const SymMatrix& m);

// Solve m x = b through an existing Cholesky factor.
Vec chol_solve(const Matrix& L, const Vec& b);

// Inverse via Cholesky.
SymMatrix sym_inverse(const SymMatrix& m);

// x' m^{-1} x through Cholesky of m.
double quad_form_inv(const Matrix& L, const Vec& x);

// log det m = 2 sum log diag(L).
double chol_logdet(const Matrix& L);

struct Eig2 {
    double lambda1 = 0.0;  // larger
    double lambda2 = 0.0;
    Matrix u;              // orthogonal, columns are eigenvectors
};

// Closed-form symmetric 2x2 eigendecomposition, lambda1 >= lambda2,
// m = u diag(lambda1, lambda2) u'.
Eig2 sym_eig_2x2(const SymMatrix& m);

// Least squares via Householder QR. X is n x p (n >= p). Returns coefficients
// and, through xtx_inv, (X'X)^{-1} = R^{-1} R^{-T}.
struct LstsqResult {
    Vec beta;
    SymMatrix xtx_inv;
};
LstsqResult lstsq_qr(const Matrix& X, const Vec& y);

}  // namespace shockbayes

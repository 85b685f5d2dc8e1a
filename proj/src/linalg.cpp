#include "shockbayes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shockbayes/errors.hpp"

namespace shockbayes {

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> entries)
    : n_(dim), d_(std::move(entries)) {
    if (n_ < 1) throw DomainError("SymMatrix dimension must be >= 1");
    if (d_.size() != n_ * n_) throw DomainError("SymMatrix entry count mismatch");
    double scale = 0.0;
    for (double v : d_) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            double a = d_[i * n_ + j], b = d_[j * n_ + i];
            if (std::fabs(a - b) > 1e-12 * std::max(1.0, scale))
                throw DomainError("matrix is not symmetric within 1e-12 relative");
            double m = 0.5 * (a + b);
            d_[i * n_ + j] = m;
            d_[j * n_ + i] = m;
        }
}

SymMatrix SymMatrix::identity(std::size_t dim) {
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
    return SymMatrix(dim, std::move(e));
}

SymMatrix SymMatrix::scaled(double c) const {
    std::vector<double> e = d_;
    for (double& v : e) v *= c;
    return SymMatrix(n_, std::move(e));
}

Matrix cholesky(const SymMatrix& m) {
    const std::size_t n = m.dim();
    Matrix L(n, n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
        if (!(diag > 0.0))
            throw NotPositiveDefinite("pivot " + std::to_string(j) +
                                      " is not positive in Cholesky factorization");
        L(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

Vec chol_solve(const Matrix& L, const Vec& b) {
    const std::size_t n = L.rows();
    Vec y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * x[k];
        x[ii] = s / L(ii, ii);
    }
    return x;
}

SymMatrix sym_inverse(const SymMatrix& m) {
    const std::size_t n = m.dim();
    Matrix L = cholesky(m);
    std::vector<double> inv(n * n, 0.0);
    Vec e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        Vec col = chol_solve(L, e);
        for (std::size_t i = 0; i < n; ++i) inv[i * n + j] = col[i];
    }
    // symmetrize rounding noise
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.5 * (inv[i * n + j] + inv[j * n + i]);
            inv[i * n + j] = v;
            inv[j * n + i] = v;
        }
    return SymMatrix(n, std::move(inv));
}

double quad_form_inv(const Matrix& L, const Vec& x) {
    // x' m^{-1} x = || L^{-1} x ||^2
    const std::size_t n = L.rows();
    Vec y(n);
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
        q += y[i] * y[i];
    }
    return q;
}

double chol_logdet(const Matrix& L) {
    double s = 0.0;
    for (std::size_t i = 0; i < L.rows(); ++i) s += std::log(L(i, i));
    return 2.0 * s;
}

Eig2 sym_eig_2x2(const SymMatrix& m) {
    if (m.dim() != 2) throw DomainError("sym_eig_2x2 requires dimension 2");
    const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    Eig2 out;
    out.lambda1 = 0.5 * (tr + disc);
    out.lambda2 = 0.5 * (tr - disc);
    out.u = Matrix(2, 2, 0.0);
    if (std::fabs(b) < 1e-300 * std::max(1.0, std::fabs(tr))) {
        // already diagonal; order columns by eigenvalue
        if (a >= c) {
            out.u(0, 0) = 1.0; out.u(1, 1) = 1.0;
        } else {
            out.u(0, 1) = 1.0; out.u(1, 0) = 1.0;
        }
        return out;
    }
    // eigenvector for lambda1: (b, lambda1 - a)
    double v0 = b, v1 = out.lambda1 - a;
    double norm = std::hypot(v0, v1);
    v0 /= norm; v1 /= norm;
    out.u(0, 0) = v0; out.u(1, 0) = v1;
    out.u(0, 1) = -v1; out.u(1, 1) = v0;
    return out;
}

LstsqResult lstsq_qr(const Matrix& X, const Vec& y) {
    const std::size_t n = X.rows(), p = X.cols();
    if (n < p) throw RankDeficient("fewer rows than columns in design matrix");
    Matrix A = X;  // working copy, becomes R in the upper triangle
    Vec b = y;
    std::vector<double> vhh(n);
    for (std::size_t j = 0; j < p; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += A(i, j) * A(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) throw RankDeficient("design matrix column is degenerate");
        double alpha = A(j, j) > 0 ? -norm : norm;
        double v0 = A(j, j) - alpha;
        vhh[j] = v0;
        for (std::size_t i = j + 1; i < n; ++i) vhh[i] = A(i, j);
        double vnorm2 = v0 * v0;
        for (std::size_t i = j + 1; i < n; ++i) vnorm2 += vhh[i] * vhh[i];
        if (vnorm2 == 0.0) throw RankDeficient("design matrix column is degenerate");
        A(j, j) = alpha;
        for (std::size_t i = j + 1; i < n; ++i) A(i, j) = 0.0;
        for (std::size_t k = j + 1; k < p; ++k) {
            double dot = v0 * A(j, k);
            for (std::size_t i = j + 1; i < n; ++i) dot += vhh[i] * A(i, k);
            double f = 2.0 * dot / vnorm2;
            A(j, k) -= f * v0;
            for (std::size_t i = j + 1; i < n; ++i) A(i, k) -= f * vhh[i];
        }
        double dot = v0 * b[j];
        for (std::size_t i = j + 1; i < n; ++i) dot += vhh[i] * b[i];
        double f = 2.0 * dot / vnorm2;
        b[j] -= f * v0;
        for (std::size_t i = j + 1; i < n; ++i) b[i] -= f * vhh[i];
    }
    // rank check on R diagonal
    double rmax = 0.0;
    for (std::size_t j = 0; j < p; ++j) rmax = std::max(rmax, std::fabs(A(j, j)));
    for (std::size_t j = 0; j < p; ++j)
        if (std::fabs(A(j, j)) <= 1e-12 * rmax)
            throw RankDeficient("design matrix is rank deficient");
    // back substitution
    Vec beta(p);
    for (std::size_t jj = p; jj-- > 0;) {
        double s = b[jj];
        for (std::size_t k = jj + 1; k < p; ++k) s -= A(jj, k) * beta[k];
        beta[jj] = s / A(jj, jj);
    }
    // (X'X)^{-1} = R^{-1} R^{-T}
    Matrix Rinv(p, p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        Vec e(p, 0.0);
        e[j] = 1.0;
        for (std::size_t ii = p; ii-- > 0;) {
            double s = e[ii];
            for (std::size_t k = ii + 1; k < p; ++k) s -= A(ii, k) * Rinv(k, j);
            Rinv(ii, j) = (ii <= j) ? s / A(ii, ii) : 0.0;
        }
    }
    std::vector<double> xtx(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < p; ++k) s += Rinv(i, k) * Rinv(j, k);
            xtx[i * p + j] = s;
        }
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) {
            double v = 0.5 * (xtx[i * p + j] + xtx[j * p + i]);
            xtx[i * p + j] = v;
            xtx[j * p + i] = v;
        }
    return LstsqResult{std::move(beta), SymMatrix(p, std::move(xtx))};
}

}  // namespace shockbayes

#include "qglab/linalg.hpp"

#include <algorithm>

#include "qglab/errors.hpp"

namespace qglab {

Mat Tensor3::slice(int i) const {
    Mat out(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out(j, k) = (*this)(i, j, k);
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double spectral_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(0);
}

double min_singular_value(const Mat& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double max_abs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

Mat herm_sqrt(const Mat& a, double floor) {
    Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    RVec ev = es.eigenvalues();
    if (ev.minCoeff() < floor) throw NotInvertible("matrix not positive above floor");
    RVec s = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat herm_inv_sqrt(const Mat& a, double floor) {
    Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    RVec ev = es.eigenvalues();
    if (ev.minCoeff() < floor) throw NotInvertible("matrix not positive above floor");
    RVec s = ev.cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * s.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat nullspace(const Mat& a, double rel_tol) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const RVec& s = svd.singularValues();
    double smax = s.size() ? s(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * std::max(smax, 1.0)) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

Mat lstsq(const Mat& a, const Mat& b, double* residual) {
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
    Mat x = cod.solve(b);
    if (residual) *residual = max_abs(Mat(a * x - b));
    return x;
}

Vec vec(const Mat& a) { return Eigen::Map<const Vec>(a.data(), a.size()); }

Mat unvec(const Vec& v, int rows, int cols) { return Eigen::Map<const Mat>(v.data(), rows, cols); }

Mat swap_factors(int n) {
    Mat p = Mat::Zero(n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) p(b * n + a, a * n + b) = 1.0;
    return p;
}

Vec Rng::cvec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = cnormal();
    return v;
}

Mat Rng::cmat(int rows, int cols) {
    Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cnormal();
    return m;
}

Mat Rng::unitary(int n) {
    Eigen::HouseholderQR<Mat> qr(cmat(n, n));
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cd d = r(i, i);
        if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

Mat Rng::conditioned(int n, double max_cond) {
    Mat u = unitary(n);
    Mat v = unitary(n);
    RVec s(n);
    for (int i = 0; i < n; ++i) s(i) = 1.0 + (max_cond - 1.0) * uniform();
    return u * s.cast<cd>().asDiagonal() * v.adjoint();
}

}  // namespace qglab

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qglab {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Dense rank-3 tensor T[i][j][k], all indices in [0, n).
struct Tensor3 {
    int n = 0;
    std::vector<cd> v;

    Tensor3() = default;
    explicit Tensor3(int dim) : n(dim), v(static_cast<size_t>(dim) * dim * dim, cd(0.0)) {}

    cd& operator()(int i, int j, int k) { return v[(static_cast<size_t>(i) * n + j) * n + k]; }
    cd operator()(int i, int j, int k) const { return v[(static_cast<size_t>(i) * n + j) * n + k]; }

    // Slice T[i][.][.] as an n x n matrix.
    Mat slice(int i) const;
};

Mat kron(const Mat& a, const Mat& b);
double spectral_norm(const Mat& a);
double min_singular_value(const Mat& a);
double max_abs(const Mat& a);
double max_abs(const Vec& a);

// Hermitian square root and inverse square root; throws NotInvertible when the
// smallest eigenvalue falls below `floor`.
Mat herm_sqrt(const Mat& a, double floor = 0.0);
Mat herm_inv_sqrt(const Mat& a, double floor);

// Orthonormal basis of the kernel of `a` (columns), singular values below tol * sigma_max.
Mat nullspace(const Mat& a, double rel_tol = 1e-10);

// Least squares solve of a x = b, returns x and writes the max-abs residual.
Mat lstsq(const Mat& a, const Mat& b, double* residual = nullptr);

// Column-major vec and its inverse.
Vec vec(const Mat& a);
Mat unvec(const Vec& v, int rows, int cols);

// Permutation swapping the factors of C^n (x) C^n.
Mat swap_factors(int n);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    cd cnormal() { return cd(normal(), normal()) * std::sqrt(0.5); }
    Vec cvec(int n);
    Mat cmat(int rows, int cols);
    Mat unitary(int n);
    // Invertible matrix with condition number at most max_cond.
    Mat conditioned(int n, double max_cond);
    std::uint64_t next_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qglab

#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qglab/linalg.hpp"

namespace qglab {

// Raw structure tensors of a finite-dimensional Hopf *-algebra over a chosen basis e_0..e_{n-1}.
//   e_i e_j = sum_k mult(i,j,k) e_k
//   Delta(e_i) = sum_{j,k} coproduct(i,j,k) e_j (x) e_k
//   S(e_i) = sum_j antipode(i,j) e_j
//   (sum_i a_i e_i)* = sum_{i,j} conj(a_i) star(i,j) e_j
struct QuantumGroupData {
    std::string name;
    int dim = 0;
    std::vector<std::string> basis_labels;
    Tensor3 mult;
    Tensor3 coproduct;
    Vec unit;
    Vec counit;
    Mat antipode;
    Mat star;
    Vec haar;
};

struct GnsData {
    int gns_dim = 0;
    Mat lambda_map;  // Lambda(x) = lambda_map * coeffs(x), orthonormalizes h(y* x)
    Mat lambda_inv;
    std::vector<Mat> left_basis;  // lambda_h(e_k)
    Mat modular_conj;             // J v = modular_conj * conj(v)
    Mat modular_op;               // identity in the Kac case

    Vec lambda(const Vec& a) const { return lambda_map * a; }
    Mat left_action(const Vec& a) const;
    Vec apply_j(const Vec& v) const { return modular_conj * v.conjugate(); }
};

struct Block {
    int size = 0;
    Mat isometry;  // n x size, columns span an irreducible invariant subspace of H_h
};

// A = sum_k M_{n_k}: forward(a)_k = isometry_k^* lambda_h(a) isometry_k.
struct BlockDecomposition {
    std::vector<Block> blocks;
    Mat forward_matrix;   // coefficients -> concatenated row-major block entries
    Mat backward_matrix;  // inverse of forward_matrix
    double gap = 0.0;     // smallest eigenvalue gap seen while separating
    int attempts = 0;

    std::vector<int> sizes() const;
    std::vector<Mat> forward(const Vec& coeffs) const;
    Vec backward(const std::vector<Mat>& parts) const;
    std::vector<Mat> unflatten(const Vec& flat) const;
    Vec flatten(const std::vector<Mat>& parts) const;
};

class FiniteQuantumGroup {
public:
    // Checks tensor shapes only; throws StructuralError on mismatch.
    explicit FiniteQuantumGroup(QuantumGroupData data);

    const QuantumGroupData& data() const { return data_; }
    int dim() const { return data_.dim; }
    const std::string& name() const { return data_.name; }

    Vec mul(const Vec& a, const Vec& b) const;
    Vec star(const Vec& a) const;
    Vec antipode(const Vec& a) const;
    cd counit(const Vec& a) const;
    cd haar(const Vec& a) const;
    // Delta(a) as an n x n coefficient matrix P, Delta(a) = sum P(j,k) e_j (x) e_k.
    Mat coproduct(const Vec& a) const;
    Vec basis(int i) const;

    // Coefficient-level left/right multiplication operators (column j = a e_j, resp. e_j a).
    Mat left_mult(const Vec& a) const;
    Mat right_mult(const Vec& a) const;
    // Product in A (x) A of two coefficient matrices.
    Mat tensor_mul(const Mat& p, const Mat& q) const;
    bool is_commutative(double tol = 1e-10) const;
    bool is_cocommutative(double tol = 1e-10) const;

    const GnsData& gns() const;
    const BlockDecomposition& blocks() const;

private:
    QuantumGroupData data_;
    std::vector<Mat> left_coeff_;  // left_mult(e_k)
    mutable std::once_flag gns_once_;
    mutable std::unique_ptr<GnsData> gns_;
    mutable std::once_flag blocks_once_;
    mutable std::unique_ptr<BlockDecomposition> blocks_;
};

using QG = std::shared_ptr<const FiniteQuantumGroup>;

QG make_group(QuantumGroupData data);

struct AlgebraElement {
    QG owner;
    Vec coeffs;
};

AlgebraElement element(const QG& g, const Vec& coeffs);
AlgebraElement basis_element(const QG& g, int i);
AlgebraElement unit_element(const QG& g);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);
Vec apply_coproduct(const AlgebraElement& a);  // n^2 vector, index j*n + k
AlgebraElement apply_antipode(const AlgebraElement& a);
cd apply_counit(const AlgebraElement& a);
cd apply_haar(const AlgebraElement& a);
double operator_norm(const AlgebraElement& a);

struct AxiomCheck {
    std::string name;
    double violation = 0.0;
    bool ok = true;
};

struct ValidationReport {
    std::vector<AxiomCheck> checks;
    double tol = 0.0;
    bool pass = true;
    double max_violation = 0.0;

    double violation(const std::string& name) const;
};

ValidationReport validate(const FiniteQuantumGroup& g, double tol = 1e-10);

const GnsData& gns(const QG& g);
const BlockDecomposition& block_decompose(const QG& g);
// Recompute with an explicit seed (the cached decomposition uses a fixed one).
BlockDecomposition block_decompose(const FiniteQuantumGroup& g, std::uint64_t seed, int max_attempts = 20);

// Group tables: table[a][b] = index of a*b.
using GroupTable = std::vector<std::vector<int>>;

GroupTable cyclic_group(int n);
GroupTable klein_group();
GroupTable symmetric_group3();
int group_identity(const GroupTable& t);  // throws InvalidInstance on an invalid table

QG from_function_algebra(const GroupTable& t, const std::string& name = "C(G)");
QG from_group_algebra(const GroupTable& t, const std::string& name = "C[G]");
QG kac_paljutkin();

std::vector<std::string> builtin_names();
QG builtin(const std::string& name);

}  // namespace qglab

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qglab/convolution.hpp"
#include "qglab/corep.hpp"
#include "qglab/quantum_group.hpp"

namespace qglab {

// W on H_h (x) H_h, index p*n + r for Lambda(e_p) (x) Lambda(e_r) style basis vectors.
struct MultiplicativeUnitary {
    QG owner;
    Mat w;
    std::vector<Mat> slices;  // lambda(omega_k) for the dual basis functionals
    double unitarity_residual = 0.0;
    double slice_residual = 0.0;
};

MultiplicativeUnitary build_w(const QG& g);
double pentagon_residual(const Mat& w, int n);
// max_i || Delta(e_i) - W^*(1 (x) lambda_h(e_i)) W || in the GNS picture.
double coproduct_residual(const QG& g, const Mat& w);
Mat lambda_rep(const MultiplicativeUnitary& w, const Functional& omega);

struct DualQuantumGroup {
    QG primal;
    QG dual;  // basis element k is lambda(omega_k)
    MultiplicativeUnitary w;
    Mat w_hat;           // Sigma W^* Sigma
    Mat lambda_hat_map;  // column k = Lambda-hat(lambda(omega_k)) in L^2(G)
    Mat j_hat;           // J-hat v = j_hat * conj(v)
    double extraction_residual = 0.0;
};

std::shared_ptr<const DualQuantumGroup> build_dual(const QG& g);

// lambda-hat of the vector functional omega_{xi,eta} as an operator on L^2(G), and as an element of A.
Mat lambda_hat_operator(const DualQuantumGroup& dq, const Vec& xi, const Vec& eta);
AlgebraElement lambda_hat_element(const DualQuantumGroup& dq, const Vec& xi, const Vec& eta, double* residual = nullptr);
Vec lambda_hat_vector(const DualQuantumGroup& dq, const Functional& omega);

struct BidualityReport {
    std::string map;  // "identity" or "antipode"
    double violation = 0.0;
    std::vector<AxiomCheck> parts;
    Mat iso;  // e_i -> sum_a iso(i,a) f_a in the double dual
    bool blocks_match = false;
    bool pass = false;
};

BidualityReport biduality(const QG& g, double tol = 1e-8);

struct MultiplierResult {
    AlgebraElement x;          // T^{pi~}_{alpha,beta}
    Mat lstar;                 // L^* on vec(X) (column-major), X in B(L^2(G))
    double norm_bound = 0.0;   // row-column factorization norm
    double residual = 0.0;     // max over omega-hat_{e_p,e_q}
    double w_residual = 0.0;   // (L^* (x) id)(W-hat) vs (1 (x) x) W-hat
    double cor_bound = 0.0;    // ||pi||_cb ||pi^*||_cb ||alpha|| ||beta||
    double lower_bound = 0.0;  // ||x|| <= ||L||_cb
};

// frame: optional unitary whose columns are the orthonormal basis f_i of C^d.
MultiplierResult multiplier_from_coefficient(const DualQuantumGroup& dq, const Corepresentation& v, const Vec& alpha,
                                             const Vec& beta, const Mat* frame = nullptr);

double pairing_identity_check(const DualQuantumGroup& dq, const AlgebraElement& x, const Functional& w1,
                              const Functional& w2);

// Rank of the slice maps of W in both legs (n each when W is regular).
std::pair<int, int> regularity_ranks(const DualQuantumGroup& dq);

}  // namespace qglab

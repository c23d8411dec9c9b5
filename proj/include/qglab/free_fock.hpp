#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "qglab/corep.hpp"
#include "qglab/quantum_group.hpp"

namespace qglab {

using SpMat = Eigen::SparseMatrix<cd>;

// (A_i, phi_i) through its faithful GNS triple: elements are dim x dim matrices on H_i,
// phi_i(a) = (a xi | xi), and the columns of centred_basis span H_i^0 = xi^perp.
struct FreeFactor {
    std::string name;
    int dim = 0;
    Vec xi;
    Mat centred_basis;

    cd state(const Mat& a) const { return xi.dot(a * xi); }
    int centred_dim() const { return dim - 1; }
};

FreeFactor matrix_factor(int k);              // M_k with the normalized trace
FreeFactor matrix_factor(const Mat& density);  // M_k with a faithful density matrix
FreeFactor group_factor(const QG& g);          // (A, h) through its GNS representation
Mat factor_element(const QG& g, const Vec& coeffs);
// Element a of M_k acting on the GNS space of a matrix factor.
Mat matrix_element(const Mat& a);

long default_dim_cap();

class FockSpace {
public:
    FockSpace(std::vector<FreeFactor> factors, int max_len, long dim_cap = default_dim_cap());

    int dim() const { return static_cast<int>(length_.size()); }
    int max_len() const { return max_len_; }
    int num_factors() const { return static_cast<int>(factors_.size()); }
    const FreeFactor& factor(int i) const { return factors_.at(i); }

    int length(int s) const { return length_[s]; }
    int head(int s) const { return head_[s]; }
    int component(int s) const { return comp_[s]; }
    int tail(int s) const { return tail_[s]; }
    // State for (i, c) (x) s, or -1 when it would exceed max_len.
    int prepend(int s, int i, int c) const;
    // Number of states of length <= len; states are ordered by length.
    int count_up_to(int len) const;
    std::string word(int s) const;

private:
    std::vector<FreeFactor> factors_;
    int max_len_;
    std::vector<int> length_, head_, comp_, tail_;
    std::vector<int> prepend_base_;  // [s * N + i] for states shorter than max_len
    std::vector<int> level_end_;
};

struct FreeOperator {
    int factor = -1;
    Mat element;
    SpMat op;
};

FreeOperator free_action(const FockSpace& f, int i, const Mat& a);
Vec vacuum(const FockSpace& f);

struct VacuumValue {
    cd value;
    bool exact = true;  // product length within max_len
};

// <Omega | x_1 x_2 ... x_m Omega>
VacuumValue vacuum_state(const FockSpace& f, const std::vector<const FreeOperator*>& product);

// sum_t a_t (x) x_t on C^k (x) H, vectors stored as dim x k matrices.
struct AmplifiedOperator {
    int k = 1;
    std::vector<Mat> coeffs;
    std::vector<SpMat> ops;

    void add(const Mat& a, const SpMat& x);
    Mat apply(const Mat& y) const;
    Mat apply_adjoint(const Mat& y) const;
};

AmplifiedOperator scalar_operator(const SpMat& x);

struct NormOptions {
    double tol = 1e-8;
    int krylov = 24;
    int max_restarts = 400;
    std::uint64_t seed = 1;
};

struct CompressionResult {
    double value = 0.0;  // ||x y|| / ||y|| for the returned y, a certified lower bound on ||x||
    Mat vector;          // count_up_to(domain_len) x k
    int restarts = 0;
    double last_change = 0.0;
};

// Norm of x compressed to words of length <= domain_len (<= max_len - 1).
CompressionResult compression_norm(const FockSpace& f, const AmplifiedOperator& x, int domain_len,
                                   const NormOptions& opts = {}, const Mat* warm = nullptr);
// Values for domain_len = 0..max_domain, each run warm-started from the previous vector.
std::vector<double> compression_norm_sequence(const FockSpace& f, const AmplifiedOperator& x, int max_domain,
                                              const NormOptions& opts = {});

struct KhintchineTerm {
    int factor = 0;
    Mat a;  // k x k
    Mat x;  // centred element of the factor
};

struct KhintchineReport {
    double lhs_cert = 0.0;
    double max_single = 0.0;
    double row = 0.0;  // ||sum a_i^* a_i phi(x_i^* x_i)||^{1/2}
    double col = 0.0;  // ||sum a_i a_i^* phi(x_i x_i^*)||^{1/2}
    double rhs_max = 0.0;
    double ratio = 0.0;
    double slack = 0.0;  // max(0, rhs_max - lhs_cert), reported only
    bool upper_ok = false;
    int domain_len = 0;
};

KhintchineReport khintchine_check(const FockSpace& f, const std::vector<KhintchineTerm>& terms,
                                  const NormOptions& opts = {});

struct NormEquivalenceReport {
    double c1 = 0.0;  // certified upper bound for sup ||x|| / ||x xi||
    double c2 = 0.0;  // sup ||x^* xi|| / ||x xi||
    double bound = 0.0;
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    double max_lower_violation = 0.0;  // max(||x Omega|| - ||x||_cert, 0)
    int samples = 0;
};

// Constants of the coefficient space of u inside (A, h).
std::pair<double, double> coefficient_constants(const Corepresentation& u);
NormEquivalenceReport norm_equivalence(const Corepresentation& u, int copies, int max_len, int samples,
                                       std::uint64_t seed, const NormOptions& opts = {});

struct NonCbRep {
    std::shared_ptr<const FockSpace> fock;
    int copies = 0;
    std::vector<FreeOperator> u;
    AmplifiedOperator vpi;  // sum_i u_i (x) (e_ii + e_i0) on H (x) C^{N+1}
};

NonCbRep build_noncb_rep(int copies, int max_len, long dim_cap = default_dim_cap());
// Vector functional omega(x) = (x zeta | eta) on the free product.
Vec phi_map(const NonCbRep& rep, const Vec& zeta, const Vec& eta);
Mat theta_map(const Vec& a);
Mat pi_rep(const NonCbRep& rep, const Vec& zeta, const Vec& eta);

struct NonCbProbe {
    double cb_lower = 0.0;
    double analytic_floor = 0.0;  // sqrt(N) - 1
    double bounded_upper = 6.0;
    double pi_search = 0.0;        // best ||pi(omega)|| / (||zeta|| ||eta||) found
    double multiplier_norm = 0.0;  // l1 norm of the coefficient of pi-tilde at the delta_0-type vectors
    double phi_star_lower = 0.0;   // min ||phi^*(rho)|| / ||rho|| over samples
    int domain_len = 0;
};

NonCbProbe cb_vs_bounded_probe(const NonCbRep& rep, int restarts, std::uint64_t seed, const NormOptions& opts = {});

}  // namespace qglab

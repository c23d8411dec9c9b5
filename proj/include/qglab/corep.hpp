#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qglab/convolution.hpp"
#include "qglab/quantum_group.hpp"

namespace qglab {

// V = sum_{ij} v_ij (x) e_ij in A (x) M_d, entries stored row-major as coefficient vectors.
struct Corepresentation {
    QG owner;
    int d = 0;
    std::vector<Vec> entries;

    const Vec& operator()(int i, int j) const { return entries[static_cast<size_t>(i) * d + j]; }
    Vec& operator()(int i, int j) { return entries[static_cast<size_t>(i) * d + j]; }
};

using RepMatrix = Mat;

Corepresentation zero_corep(const QG& g, int d);
Corepresentation make_corep(const QG& g, int d, std::vector<Vec> entries);

struct CorepCheck {
    bool is_corep = false;
    double violation = 0.0;       // (Delta (x) id)V = V_13 V_23
    double anti_violation = 0.0;  // (Delta (x) id)V = V_23 V_13
};

CorepCheck is_corep(const Corepresentation& v, double tol = 1e-9);

RepMatrix pi_of(const Corepresentation& v, const Functional& w);
RepMatrix pi_star(const Corepresentation& v, const Functional& w);
RepMatrix pi_tilde(const Corepresentation& v, const Functional& w);
RepMatrix pi_check(const Corepresentation& v, const Functional& w);

enum class Variant { Pi, Star, Tilde, Check };
Variant parse_variant(const std::string& tag);
std::string variant_name(Variant v);
Corepresentation generator_of(Variant variant, const Corepresentation& v);

AlgebraElement coefficient(const Corepresentation& v, const Vec& alpha, const Vec& beta);
double antipode_coeff_check(const Corepresentation& v, const Vec& alpha, const Vec& beta);

// Products and adjoints in A (x) M_d.
Corepresentation corep_product(const Corepresentation& a, const Corepresentation& b);
Corepresentation corep_adjoint(const Corepresentation& v);
Corepresentation corep_identity(const QG& g, int d);
// (1 (x) left) V (1 (x) right)
Corepresentation scalar_sandwich(const Mat& left, const Corepresentation& v, const Mat& right);
Corepresentation direct_sum(const Corepresentation& a, const Corepresentation& b);
double corep_distance(const Corepresentation& a, const Corepresentation& b);

// Image of V in B(H_h (x) C^d).
Mat gns_image(const Corepresentation& v);
bool is_invertible(const Corepresentation& v);

// max(||V*V - 1||, ||VV* - 1||) in the GNS picture, and the isometry part alone.
double isometry_residual(const Corepresentation& v);
double coisometry_residual(const Corepresentation& v);

struct InverseCheck {
    Corepresentation inverse;
    double two_sided_residual = 0.0;
    double anti_corep_violation = 0.0;
};

Corepresentation inverse_corep(const Corepresentation& v);
InverseCheck inverse_corep_checked(const Corepresentation& v);

// Unitary irreducible corepresentations read off the dual's block decomposition.
std::vector<Corepresentation> unitary_irreducibles(const QG& g);
// Direct sum of irreducibles of total size d (nontrivial ones first).
Corepresentation unitary_corep(const QG& g, int d);
Corepresentation twisted_corep(const Corepresentation& v0, const Mat& t0);
Corepresentation random_invertible_corep(const QG& g, int d, std::uint64_t seed, double max_cond = 10.0);

struct UnitarizeResult {
    Mat t;
    Corepresentation unitary;
    double epsilon = 0.0;  // 1 / ||V^{-1}||^2
    double min_eig = 0.0;
};

UnitarizeResult unitarize(const Corepresentation& v);

struct EssentialData {
    Mat p;  // V (S (x) id)V in the GNS picture
    Mat q;  // (epsilon (x) id)V
    int essential_dim = 0;
    int range_dim = 0;  // dimension of the span of the ranges of pi(omega)
    double idempotent_residual = 0.0;
    double commute_residual = 0.0;
    double q_residual = 0.0;  // max_k ||pi(omega_k) Q - pi(omega_k)||
    double q_idempotent_residual = 0.0;
};

EssentialData essential_data(const Corepresentation& v);

double cb_norm(const Corepresentation& v);

struct BoundedNormSearch {
    double value = 0.0;
    Functional witness;
};

BoundedNormSearch bounded_norm_search(const Corepresentation& v, int restarts, std::uint64_t seed);
double bounded_norm_lower(const Corepresentation& v, int restarts, std::uint64_t seed);

nlohmann::ordered_json corep_to_json(const Corepresentation& v);
Corepresentation corep_from_json(const QG& g, const nlohmann::json& j);

}  // namespace qglab

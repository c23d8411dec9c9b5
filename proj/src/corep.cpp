#include "qglab/corep.hpp"

#include <algorithm>
#include <cmath>

#include "qglab/duality.hpp"
#include "qglab/errors.hpp"
#include "qglab/instance_io.hpp"

namespace qglab {

namespace {

void check_owner(const Corepresentation& v, const QG& g) {
    if (v.owner != g) throw OwnerMismatch();
}

int matrix_rank(const Mat& m, double rel_tol = 1e-8) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const RVec& s = svd.singularValues();
    double floor = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > floor) ++r;
    return r;
}

bool is_trivial(const Corepresentation& v) {
    return v.d == 1 && max_abs(Vec(v(0, 0) - v.owner->data().unit)) < 1e-8;
}

}  // namespace

Corepresentation zero_corep(const QG& g, int d) {
    if (d <= 0) throw StructuralError("corepresentation size must be positive");
    return {g, d, std::vector<Vec>(static_cast<size_t>(d) * d, Vec::Zero(g->dim()))};
}

Corepresentation make_corep(const QG& g, int d, std::vector<Vec> entries) {
    if (d <= 0 || entries.size() != static_cast<size_t>(d) * d)
        throw StructuralError("corepresentation needs d*d entries");
    for (const auto& e : entries)
        if (e.size() != g->dim()) throw StructuralError("corepresentation entry has wrong length");
    return {g, d, std::move(entries)};
}

CorepCheck is_corep(const Corepresentation& v, double tol) {
    const auto& g = *v.owner;
    CorepCheck out;
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j) {
            Mat lhs = g.coproduct(v(i, j));
            Mat fwd = Mat::Zero(g.dim(), g.dim());
            Mat bwd = Mat::Zero(g.dim(), g.dim());
            for (int k = 0; k < v.d; ++k) {
                fwd += v(i, k) * v(k, j).transpose();
                bwd += v(k, j) * v(i, k).transpose();
            }
            out.violation = std::max(out.violation, max_abs(Mat(lhs - fwd)));
            out.anti_violation = std::max(out.anti_violation, max_abs(Mat(lhs - bwd)));
        }
    out.is_corep = out.violation <= tol;
    return out;
}

RepMatrix pi_of(const Corepresentation& v, const Functional& w) {
    check_owner(v, w.owner);
    RepMatrix m(v.d, v.d);
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j) m(i, j) = v(i, j).cwiseProduct(w.coeffs).sum();
    return m;
}

RepMatrix pi_star(const Corepresentation& v, const Functional& w) { return pi_of(v, sharp(w)).adjoint(); }
RepMatrix pi_tilde(const Corepresentation& v, const Functional& w) { return pi_of(v, star_l1(w)).adjoint(); }
RepMatrix pi_check(const Corepresentation& v, const Functional& w) { return pi_of(v, sharp(star_l1(w))); }

Variant parse_variant(const std::string& tag) {
    if (tag == "pi") return Variant::Pi;
    if (tag == "star") return Variant::Star;
    if (tag == "tilde") return Variant::Tilde;
    if (tag == "check") return Variant::Check;
    throw StructuralError("unknown representation variant '" + tag + "'");
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Pi: return "pi";
        case Variant::Star: return "star";
        case Variant::Tilde: return "tilde";
        case Variant::Check: return "check";
    }
    return "pi";
}

Corepresentation generator_of(Variant variant, const Corepresentation& v) {
    const auto& g = *v.owner;
    Corepresentation out = zero_corep(v.owner, v.d);
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j) {
            switch (variant) {
                case Variant::Pi: out(i, j) = v(i, j); break;
                case Variant::Tilde: out(i, j) = g.star(v(j, i)); break;
                case Variant::Check: out(i, j) = g.antipode(v(i, j)); break;
                case Variant::Star: out(i, j) = g.star(g.antipode(v(j, i))); break;
            }
        }
    return out;
}

AlgebraElement coefficient(const Corepresentation& v, const Vec& alpha, const Vec& beta) {
    if (alpha.size() != v.d || beta.size() != v.d) throw StructuralError("coefficient vectors must have length d");
    Vec t = Vec::Zero(v.owner->dim());
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j) t += v(i, j) * (alpha(j) * std::conj(beta(i)));
    return {v.owner, t};
}

double antipode_coeff_check(const Corepresentation& v, const Vec& alpha, const Vec& beta) {
    AlgebraElement t_star = coefficient(generator_of(Variant::Star, v), alpha, beta);
    AlgebraElement lhs = adjoint(apply_antipode(t_star));
    return max_abs(Vec(lhs.coeffs - coefficient(v, beta, alpha).coeffs));
}

Corepresentation corep_product(const Corepresentation& a, const Corepresentation& b) {
    check_owner(a, b.owner);
    if (a.d != b.d) throw StructuralError("corepresentation sizes differ");
    const auto& g = *a.owner;
    Corepresentation out = zero_corep(a.owner, a.d);
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j)
            for (int k = 0; k < a.d; ++k) out(i, j) += g.mul(a(i, k), b(k, j));
    return out;
}

Corepresentation corep_adjoint(const Corepresentation& v) { return generator_of(Variant::Tilde, v); }

Corepresentation corep_identity(const QG& g, int d) {
    Corepresentation out = zero_corep(g, d);
    for (int i = 0; i < d; ++i) out(i, i) = g->data().unit;
    return out;
}

Corepresentation scalar_sandwich(const Mat& left, const Corepresentation& v, const Mat& right) {
    Corepresentation out = zero_corep(v.owner, v.d);
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j)
            for (int a = 0; a < v.d; ++a)
                for (int b = 0; b < v.d; ++b) {
                    cd c = left(i, a) * right(b, j);
                    if (c != cd(0.0)) out(i, j) += c * v(a, b);
                }
    return out;
}

Corepresentation direct_sum(const Corepresentation& a, const Corepresentation& b) {
    check_owner(a, b.owner);
    Corepresentation out = zero_corep(a.owner, a.d + b.d);
    for (int i = 0; i < a.d; ++i)
        for (int j = 0; j < a.d; ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.d; ++i)
        for (int j = 0; j < b.d; ++j) out(a.d + i, a.d + j) = b(i, j);
    return out;
}

double corep_distance(const Corepresentation& a, const Corepresentation& b) {
    check_owner(a, b.owner);
    if (a.d != b.d) throw StructuralError("corepresentation sizes differ");
    double m = 0.0;
    for (size_t k = 0; k < a.entries.size(); ++k) m = std::max(m, max_abs(Vec(a.entries[k] - b.entries[k])));
    return m;
}

Mat gns_image(const Corepresentation& v) {
    const auto& gd = v.owner->gns();
    const int n = gd.gns_dim;
    Mat out = Mat::Zero(n * v.d, n * v.d);
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j) {
            Mat l = gd.left_action(v(i, j));
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) out(p * v.d + i, q * v.d + j) = l(p, q);
        }
    return out;
}

bool is_invertible(const Corepresentation& v) {
    Eigen::JacobiSVD<Mat> svd(gns_image(v));
    const RVec& s = svd.singularValues();
    return s(0) > 0.0 && s(s.size() - 1) >= 1e-8 * s(0);
}

double isometry_residual(const Corepresentation& v) {
    Mat m = gns_image(v);
    return spectral_norm(Mat(m.adjoint() * m - Mat::Identity(m.rows(), m.cols())));
}

double coisometry_residual(const Corepresentation& v) {
    Mat m = gns_image(v);
    return spectral_norm(Mat(m * m.adjoint() - Mat::Identity(m.rows(), m.cols())));
}

InverseCheck inverse_corep_checked(const Corepresentation& v) {
    if (!is_invertible(v)) throw NotInvertible("corepresentation is singular in the GNS picture");
    InverseCheck out;
    out.inverse = generator_of(Variant::Check, v);
    Mat a = gns_image(v);
    Mat b = gns_image(out.inverse);
    Mat id = Mat::Identity(a.rows(), a.cols());
    out.two_sided_residual = std::max(spectral_norm(Mat(a * b - id)), spectral_norm(Mat(b * a - id)));
    out.anti_corep_violation = is_corep(out.inverse).anti_violation;
    return out;
}

Corepresentation inverse_corep(const Corepresentation& v) {
    InverseCheck c = inverse_corep_checked(v);
    if (c.two_sided_residual > 1e-6) throw InvalidInstance("(S x id)V is not an inverse; input is not a corepresentation");
    return c.inverse;
}

std::vector<Corepresentation> unitary_irreducibles(const QG& g) {
    auto dq = build_dual(g);
    const auto& bd = dq->dual->blocks();
    const int n = g->dim();
    std::vector<Corepresentation> out;
    int offset = 0;
    for (const auto& blk : bd.blocks) {
        Corepresentation u = zero_corep(g, blk.size);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < blk.size; ++i)
                for (int j = 0; j < blk.size; ++j) u(i, j)(k) = bd.forward_matrix(offset + i * blk.size + j, k);
        offset += blk.size * blk.size;
        out.push_back(std::move(u));
    }
    return out;
}

Corepresentation unitary_corep(const QG& g, int d) {
    if (d <= 0) throw StructuralError("corepresentation size must be positive");
    auto irreps = unitary_irreducibles(g);
    std::stable_sort(irreps.begin(), irreps.end(), [](const Corepresentation& a, const Corepresentation& b) {
        bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return tb;
        return a.d > b.d;
    });
    std::vector<const Corepresentation*> chosen;
    int remaining = d;
    for (const auto& u : irreps)
        for (int copy = 0; copy < u.d && remaining >= u.d; ++copy) {
            chosen.push_back(&u);
            remaining -= u.d;
        }
    if (remaining != 0) throw InvalidInstance("no " + std::to_string(d) + "-dimensional unitary corepresentation available");
    Corepresentation v = *chosen[0];
    for (size_t k = 1; k < chosen.size(); ++k) v = direct_sum(v, *chosen[k]);
    return v;
}

Corepresentation twisted_corep(const Corepresentation& v0, const Mat& t0) {
    if (t0.rows() != v0.d || t0.cols() != v0.d) throw StructuralError("twist must be d x d");
    return scalar_sandwich(t0, v0, t0.inverse());
}

Corepresentation random_invertible_corep(const QG& g, int d, std::uint64_t seed, double max_cond) {
    Corepresentation v0 = unitary_corep(g, d);
    Rng rng(seed);
    return twisted_corep(v0, rng.conditioned(d, max_cond));
}

UnitarizeResult unitarize(const Corepresentation& v) {
    const auto& g = *v.owner;
    Mat img = gns_image(v);
    Eigen::JacobiSVD<Mat> svd(img);
    const RVec& s = svd.singularValues();
    if (!(s(0) > 0.0) || s(s.size() - 1) < 1e-8 * s(0))
        throw NotInvertible("corepresentation is singular in the GNS picture");
    UnitarizeResult out;
    out.epsilon = s(s.size() - 1) * s(s.size() - 1);
    Mat t(v.d, v.d);
    for (int i = 0; i < v.d; ++i)
        for (int j = 0; j < v.d; ++j) {
            Vec acc = Vec::Zero(g.dim());
            for (int k = 0; k < v.d; ++k) acc += g.mul(g.star(v(k, i)), v(k, j));
            t(i, j) = g.haar(acc);
        }
    out.t = 0.5 * (t + t.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(out.t);
    out.min_eig = es.eigenvalues().minCoeff();
    if (out.min_eig < out.epsilon - 1e-8 * std::max(1.0, es.eigenvalues().maxCoeff()))
        throw InvalidInstance("averaged matrix T is not bounded below by 1/||V^-1||^2; input is not a corepresentation");
    Mat root = herm_sqrt(out.t);
    Mat inv_root = herm_inv_sqrt(out.t, 0.0);
    out.unitary = scalar_sandwich(root, v, inv_root);
    return out;
}

EssentialData essential_data(const Corepresentation& v) {
    const auto& g = *v.owner;
    EssentialData out;
    Corepresentation vc = generator_of(Variant::Check, v);
    Mat a = gns_image(v);
    Mat b = gns_image(vc);
    out.p = a * b;
    out.idempotent_residual = max_abs(Mat(out.p * out.p - out.p));
    out.commute_residual = max_abs(Mat(out.p - b * a));
    out.q = pi_of(v, counit_functional(v.owner));
    out.q_idempotent_residual = max_abs(Mat(out.q * out.q - out.q));
    out.essential_dim = matrix_rank(out.q);
    Mat ranges(v.d, v.d * g.dim());
    for (int k = 0; k < g.dim(); ++k) {
        Mat pk = pi_of(v, basis_functional(v.owner, k));
        ranges.block(0, k * v.d, v.d, v.d) = pk;
        out.q_residual = std::max(out.q_residual, max_abs(Mat(pk * out.q - pk)));
    }
    out.range_dim = matrix_rank(ranges);
    return out;
}

double cb_norm(const Corepresentation& v) { return spectral_norm(gns_image(v)); }

BoundedNormSearch bounded_norm_search(const Corepresentation& v, int restarts, std::uint64_t seed) {
    const auto& bd = v.owner->blocks();
    Rng rng(seed);
    BoundedNormSearch best{0.0, counit_functional(v.owner)};
    for (int r = 0; r < std::max(1, restarts); ++r) {
        Vec a = rng.cvec(v.d).normalized();
        Vec b = rng.cvec(v.d).normalized();
        double last = -1.0;
        for (int it = 0; it < 200; ++it) {
            auto parts = bd.forward(coefficient(v, a, b).coeffs);
            int kbest = 0;
            double sbest = -1.0;
            Vec xi, eta;
            for (size_t k = 0; k < parts.size(); ++k) {
                Eigen::JacobiSVD<Mat> svd(parts[k], Eigen::ComputeFullU | Eigen::ComputeFullV);
                if (svd.singularValues()(0) > sbest) {
                    sbest = svd.singularValues()(0);
                    kbest = static_cast<int>(k);
                    xi = svd.matrixV().col(0);
                    eta = svd.matrixU().col(0);
                }
            }
            // omega(x) = eta^* x_k xi, a trace-norm one extreme point.
            std::vector<Mat> rank_one;
            for (size_t k = 0; k < parts.size(); ++k) rank_one.push_back(Mat::Zero(parts[k].rows(), parts[k].cols()));
            rank_one[kbest] = eta.conjugate() * xi.transpose();
            Vec w = bd.forward_matrix.transpose() * bd.flatten(rank_one);
            Functional omega{v.owner, w};
            Mat pm = pi_of(v, omega);
            Eigen::JacobiSVD<Mat> svd(pm, Eigen::ComputeFullU | Eigen::ComputeFullV);
            double val = svd.singularValues()(0) / norm_l1(omega);
            if (val > best.value) best = {val, omega};
            if (val <= last + 1e-13) break;
            last = val;
            a = svd.matrixV().col(0);
            b = svd.matrixU().col(0);
        }
    }
    return best;
}

double bounded_norm_lower(const Corepresentation& v, int restarts, std::uint64_t seed) {
    return bounded_norm_search(v, restarts, seed).value;
}

nlohmann::ordered_json corep_to_json(const Corepresentation& v) {
    nlohmann::ordered_json j;
    j["owner"] = v.owner->name();
    j["dim_d"] = v.d;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < v.d; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < v.d; ++k) row.push_back(vec_to_json(v(i, k)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

Corepresentation corep_from_json(const QG& g, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim_d") || !j.contains("entries"))
        throw StructuralError("corepresentation needs fields 'dim_d' and 'entries'");
    if (!j["dim_d"].is_number_integer()) throw StructuralError("field 'dim_d' must be an integer");
    const int d = j["dim_d"].get<int>();
    const auto& rows = j["entries"];
    if (d <= 0 || !rows.is_array() || rows.size() != static_cast<size_t>(d))
        throw StructuralError("field 'entries' must be a d x d array");
    std::vector<Vec> entries;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<size_t>(d))
            throw StructuralError("field 'entries' must be a d x d array");
        for (const auto& e : row) entries.push_back(vec_from_json(e, "entries"));
    }
    return make_corep(g, d, std::move(entries));
}

}  // namespace qglab

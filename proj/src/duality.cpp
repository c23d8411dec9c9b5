#include "qglab/duality.hpp"

#include <algorithm>
#include <cmath>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

// Columns vec(L_k) for k = 0..n-1.
Mat stacked(const std::vector<Mat>& ops) {
    const Eigen::Index m = ops.front().size();
    Mat out(m, static_cast<Eigen::Index>(ops.size()));
    for (size_t k = 0; k < ops.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vec(ops[k]);
    return out;
}

// W[p n + r, q n + s] rearranged to rows vec-index (p,q) (column-major) and columns (r,s) (row-major).
Mat realign(const Mat& w, int n) {
    Mat out(n * n, n * n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) out(q * n + p, r * n + s) = w(p * n + r, q * n + s);
    return out;
}

int rank_of(const Mat& m, double rel_tol = 1e-9) {
    Eigen::JacobiSVD<Mat> svd(m);
    const RVec& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

double solve_residual(const Eigen::CompleteOrthogonalDecomposition<Mat>& cod, const Mat& a, const Vec& b, Vec& x) {
    x = cod.solve(b);
    return max_abs(Vec(a * x - b));
}

}  // namespace

MultiplicativeUnitary build_w(const QG& g) {
    const auto& d = g->data();
    const auto& gd = g->gns();
    const int n = g->dim();
    Mat mc = Mat::Zero(n * n, n * n);
    // Column i*n + j holds Delta(e_j)(e_i (x) 1).
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cd djkl = d.coproduct(j, k, l);
                    if (djkl == cd(0.0)) continue;
                    for (int m = 0; m < n; ++m) mc(m * n + l, i * n + j) += djkl * d.mult(k, i, m);
                }
    Mat wstar = kron(gd.lambda_map, gd.lambda_map) * mc * kron(gd.lambda_inv, gd.lambda_inv);
    MultiplicativeUnitary out;
    out.owner = g;
    out.w = wstar.adjoint();
    out.unitarity_residual = max_abs(Mat(out.w * wstar - Mat::Identity(n * n, n * n)));
    if (out.unitarity_residual > 1e-8)
        throw InvalidInstance("multiplicative unitary is not unitary (residual " + std::to_string(out.unitarity_residual) + ")");
    Mat coeffs = lstsq(stacked(gd.left_basis), realign(out.w, n), &out.slice_residual);
    for (int k = 0; k < n; ++k) {
        Mat b(n, n);
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) b(r, s) = coeffs(k, r * n + s);
        out.slices.push_back(b);
    }
    return out;
}

double pentagon_residual(const Mat& w, int n) {
    Mat id = Mat::Identity(n, n);
    Mat w12 = kron(w, id);
    Mat w23 = kron(id, w);
    Mat s23 = kron(id, swap_factors(n));
    Mat w13 = s23 * w12 * s23;
    return max_abs(Mat(w12 * w13 * w23 - w23 * w12));
}

double coproduct_residual(const QG& g, const Mat& w) {
    const auto& d = g->data();
    const auto& gd = g->gns();
    const int n = g->dim();
    Mat id = Mat::Identity(n, n);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        Mat lhs = Mat::Zero(n * n, n * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d.coproduct(i, j, k) != cd(0.0)) lhs += d.coproduct(i, j, k) * kron(gd.left_basis[j], gd.left_basis[k]);
        Mat rhs = w.adjoint() * kron(id, gd.left_basis[i]) * w;
        worst = std::max(worst, max_abs(Mat(lhs - rhs)));
    }
    return worst;
}

Mat lambda_rep(const MultiplicativeUnitary& w, const Functional& omega) {
    if (omega.owner != w.owner) throw OwnerMismatch();
    const int n = w.owner->dim();
    Mat out = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) out += omega.coeffs(k) * w.slices[k];
    return out;
}

std::shared_ptr<const DualQuantumGroup> build_dual(const QG& g) {
    const auto& d = g->data();
    const auto& gd = g->gns();
    const int n = g->dim();
    auto out = std::make_shared<DualQuantumGroup>();
    out->primal = g;
    out->w = build_w(g);
    const auto& b = out->w.slices;
    double worst = out->w.slice_residual;

    Mat basis = stacked(b);
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(basis);
    Vec x;

    QuantumGroupData dd;
    dd.name = "dual(" + d.name + ")";
    dd.dim = n;
    for (const auto& l : d.basis_labels) dd.basis_labels.push_back("lambda(w_" + l + ")");
    dd.mult = Tensor3(n);
    dd.coproduct = Tensor3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            worst = std::max(worst, solve_residual(cod, basis, vec(Mat(b[i] * b[j])), x));
            for (int k = 0; k < n; ++k) dd.mult(i, j, k) = x(k);
        }
    dd.star = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, solve_residual(cod, basis, vec(Mat(b[i].adjoint())), x));
        dd.star.row(i) = x.transpose();
    }
    worst = std::max(worst, solve_residual(cod, basis, vec(Mat(Mat::Identity(n, n))), x));
    dd.unit = x;

    Mat sw = swap_factors(n);
    out->w_hat = sw * out->w.w.adjoint() * sw;
    std::vector<Mat> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairs.push_back(kron(b[i], b[j]));
    Mat pair_basis = stacked(pairs);
    Eigen::CompleteOrthogonalDecomposition<Mat> cod2(pair_basis);
    Mat id = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        Mat target = out->w_hat.adjoint() * kron(id, b[i]) * out->w_hat;
        worst = std::max(worst, solve_residual(cod2, pair_basis, vec(target), x));
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) dd.coproduct(i, j, k) = x(j * n + k);
    }
    if (worst > 1e-6)
        throw InvalidInstance("dual structure extraction failed (residual " + std::to_string(worst) + ")");
    out->extraction_residual = worst;

    dd.counit = d.unit;
    dd.antipode = d.antipode.transpose();
    // Lambda-hat(lambda(omega)) = Lambda^{-*} C omega.
    out->lambda_hat_map = gd.lambda_inv.adjoint() * d.star;
    Vec lam_one = out->lambda_hat_map * dd.unit;
    Vec phi = out->lambda_hat_map.transpose() * lam_one.conjugate();
    dd.haar = phi / phi.cwiseProduct(dd.unit).sum();
    out->j_hat = out->lambda_hat_map * dd.star.transpose() * out->lambda_hat_map.inverse().conjugate();
    out->dual = make_group(std::move(dd));
    return out;
}

Mat lambda_hat_operator(const DualQuantumGroup& dq, const Vec& xi, const Vec& eta) {
    const int n = dq.primal->dim();
    const Mat wstar = dq.w.w.adjoint();
    Mat out = Mat::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            cd acc = 0.0;
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) acc += wstar(p * n + r, q * n + s) * xi(s) * std::conj(eta(r));
            out(p, q) = acc;
        }
    return out;
}

AlgebraElement lambda_hat_element(const DualQuantumGroup& dq, const Vec& xi, const Vec& eta, double* residual) {
    const auto& gd = dq.primal->gns();
    Mat y = lstsq(stacked(gd.left_basis), vec(lambda_hat_operator(dq, xi, eta)), residual);
    return {dq.primal, y.col(0)};
}

Vec lambda_hat_vector(const DualQuantumGroup& dq, const Functional& omega) {
    if (omega.owner != dq.primal) throw OwnerMismatch();
    return dq.lambda_hat_map * omega.coeffs;
}

BidualityReport biduality(const QG& g, double tol) {
    auto first = build_dual(g);
    auto second = build_dual(first->dual);
    const auto& a = g->data();
    const auto& c = second->dual->data();
    const int n = g->dim();

    auto evaluate = [&](const Mat& p) {
        std::vector<AxiomCheck> parts;
        double v = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    cd lhs = 0.0, rhs = 0.0;
                    for (int x = 0; x < n; ++x)
                        for (int y = 0; y < n; ++y) lhs += p(i, x) * p(j, y) * c.mult(x, y, k);
                    for (int z = 0; z < n; ++z) rhs += a.mult(i, j, z) * p(z, k);
                    v = std::max(v, std::abs(lhs - rhs));
                }
        parts.push_back({"multiplication", v, v <= tol});
        v = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    cd lhs = 0.0, rhs = 0.0;
                    for (int x = 0; x < n; ++x)
                        for (int y = 0; y < n; ++y) lhs += a.coproduct(i, x, y) * p(x, j) * p(y, k);
                    for (int z = 0; z < n; ++z) rhs += p(i, z) * c.coproduct(z, j, k);
                    v = std::max(v, std::abs(lhs - rhs));
                }
        parts.push_back({"coproduct", v, v <= tol});
        v = max_abs(Mat(a.star * p - p.conjugate() * c.star));
        parts.push_back({"star", v, v <= tol});
        v = max_abs(Mat(a.antipode * p - p * c.antipode));
        parts.push_back({"antipode", v, v <= tol});
        v = max_abs(Vec(p.transpose() * a.unit - c.unit));
        parts.push_back({"unit", v, v <= tol});
        v = max_abs(Vec(a.counit - p * c.counit));
        parts.push_back({"counit", v, v <= tol});
        v = max_abs(Vec(a.haar - p * c.haar));
        parts.push_back({"haar", v, v <= tol});
        return parts;
    };

    BidualityReport best;
    best.violation = INFINITY;
    for (auto [name, p] : {std::pair<std::string, Mat>{"identity", Mat::Identity(n, n)}, {"antipode", a.antipode}}) {
        auto parts = evaluate(p);
        double v = 0.0;
        for (const auto& part : parts) v = std::max(v, part.violation);
        if (v < best.violation) {
            best.map = name;
            best.violation = v;
            best.parts = parts;
            best.iso = p;
        }
    }
    best.blocks_match = g->blocks().sizes() == second->dual->blocks().sizes();
    best.pass = best.blocks_match && best.violation <= tol;
    return best;
}

MultiplierResult multiplier_from_coefficient(const DualQuantumGroup& dq, const Corepresentation& v, const Vec& alpha,
                                             const Vec& beta, const Mat* frame) {
    if (v.owner != dq.primal) throw OwnerMismatch();
    if (!is_invertible(v)) throw NotInvertible("multiplier needs an invertible corepresentation");
    const auto& g = *dq.primal;
    const auto& gd = g.gns();
    const int n = g.dim();
    Mat f = frame ? *frame : Mat::Identity(v.d, v.d);

    Corepresentation vt = generator_of(Variant::Tilde, v);
    MultiplierResult out;
    out.x = coefficient(vt, alpha, beta);
    std::vector<Mat> as, bs;
    for (int i = 0; i < v.d; ++i) {
        Vec fi = f.col(i);
        Vec ai = coefficient(vt, alpha, fi).coeffs;
        Vec bi = coefficient(vt, fi, beta).coeffs;
        as.push_back(gd.left_action(ai));
        bs.push_back(gd.left_action(g.antipode(g.star(bi))).adjoint());
    }
    out.lstar = Mat::Zero(n * n, n * n);
    Mat rows = Mat::Zero(n, n), cols = Mat::Zero(n, n);
    for (int i = 0; i < v.d; ++i) {
        out.lstar += kron(as[i].transpose(), bs[i]);
        rows += bs[i] * bs[i].adjoint();
        cols += as[i].adjoint() * as[i];
    }
    out.norm_bound = std::sqrt(spectral_norm(rows) * spectral_norm(cols));

    Mat lx = gd.left_action(out.x.coeffs);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Vec ep = Vec::Unit(n, p), eq = Vec::Unit(n, q);
            Mat lhs = Mat::Zero(n, n);
            for (int i = 0; i < v.d; ++i) lhs += lambda_hat_operator(dq, as[i] * ep, bs[i].adjoint() * eq);
            Mat rhs = lx * lambda_hat_operator(dq, ep, eq);
            out.residual = std::max(out.residual, max_abs(Mat(lhs - rhs)));
        }

    // (L^* (x) id)(W-hat): L^* on the first leg of W-hat[p n + r, q n + s].
    Mat lhs = Mat::Zero(n * n, n * n);
    for (int i = 0; i < v.d; ++i)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                Mat slice(n, n);
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) slice(p, q) = dq.w_hat(p * n + r, q * n + s);
                Mat img = bs[i] * slice * as[i];
                for (int p = 0; p < n; ++p)
                    for (int q = 0; q < n; ++q) lhs(p * n + r, q * n + s) += img(p, q);
            }
    Mat rhs = kron(Mat::Identity(n, n), lx) * dq.w_hat;
    out.w_residual = max_abs(Mat(lhs - rhs));

    out.cor_bound = cb_norm(v) * cb_norm(generator_of(Variant::Star, v)) * alpha.norm() * beta.norm();
    out.lower_bound = spectral_norm(lx);
    return out;
}

double pairing_identity_check(const DualQuantumGroup& dq, const AlgebraElement& x, const Functional& w1,
                              const Functional& w2) {
    if (x.owner != dq.primal || w1.owner != dq.primal || w2.owner != dq.primal) throw OwnerMismatch();
    const auto& g = *dq.primal;
    const auto& d = g.data();
    const auto& gd = g.gns();
    const int n = g.dim();
    Vec xi = lambda_hat_vector(dq, w1);
    Vec eta = dq.j_hat * lambda_hat_vector(dq, w2).conjugate();
    AlgebraElement y = lambda_hat_element(dq, gd.left_action(x.coeffs) * xi, eta);
    Vec lhs = gd.lambda(y.coeffs);

    // (x omega)(e_j) = omega(e_j x)
    Vec xw(n);
    for (int j = 0; j < n; ++j) {
        cd acc = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) acc += x.coeffs(k) * d.mult(j, k, l) * w1.coeffs(l);
        xw(j) = acc;
    }
    Vec rhs = lambda_hat_vector(dq, convolve({dq.primal, xw}, w2));
    return max_abs(Vec(lhs - rhs));
}

std::pair<int, int> regularity_ranks(const DualQuantumGroup& dq) {
    const int n = dq.primal->dim();
    // Columns of the realigned W span the first-leg slices, the stacked lambda(omega_k) the second.
    return {rank_of(realign(dq.w.w, n)), rank_of(stacked(dq.w.slices))};
}

}  // namespace qglab

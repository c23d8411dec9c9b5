#include "qglab/free_fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

FreeFactor finish_factor(std::string name, Vec xi) {
    FreeFactor f;
    f.name = std::move(name);
    f.dim = static_cast<int>(xi.size());
    f.xi = xi / xi.norm();
    Mat row = f.xi.adjoint();
    f.centred_basis = nullspace(row);
    if (f.centred_basis.cols() != f.dim - 1) throw NumericalDegeneracy("could not complete the cyclic vector to a basis");
    return f;
}

cd frob_dot(const Mat& a, const Mat& b) { return a.cwiseProduct(b.conjugate()).sum(); }  // (a | b)

// out += (x y) a^T, touching only the columns of y that a uses.
template <typename Sparse>
void accumulate(Mat& out, const Sparse& x, const Mat& y, const Mat& a) {
    Vec tmp;
    for (int c = 0; c < a.cols(); ++c) {
        if (a.col(c).isZero(0.0)) continue;
        tmp.noalias() = x * y.col(c);
        for (int r = 0; r < a.rows(); ++r)
            if (a(r, c) != cd(0.0)) out.col(r) += a(r, c) * tmp;
    }
}

}  // namespace

FreeFactor matrix_factor(int k) {
    if (k < 1) throw StructuralError("matrix factor needs k >= 1");
    return matrix_factor(Mat(Mat::Identity(k, k) / static_cast<double>(k)));
}

FreeFactor matrix_factor(const Mat& density) {
    const int k = static_cast<int>(density.rows());
    if (density.cols() != k) throw StructuralError("density must be square");
    if (max_abs(Mat(density - density.adjoint())) > 1e-12 || std::abs(density.trace() - cd(1.0)) > 1e-10)
        throw InvalidInstance("density must be Hermitian with unit trace");
    Mat root = herm_sqrt(density, 1e-12);
    return finish_factor("M" + std::to_string(k), vec(root));
}

Mat matrix_element(const Mat& a) {
    const int k = static_cast<int>(a.rows());
    return kron(Mat::Identity(k, k), a);
}

FreeFactor group_factor(const QG& g) {
    return finish_factor(g->name(), g->gns().lambda(unit_element(g).coeffs));
}

Mat factor_element(const QG& g, const Vec& coeffs) {
    if (coeffs.size() != g->dim()) throw StructuralError("coefficient vector has the wrong length");
    return g->gns().left_action(coeffs);
}

long default_dim_cap() {
    if (const char* env = std::getenv("QGLAB_DIM_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 200000;
}

FockSpace::FockSpace(std::vector<FreeFactor> factors, int max_len, long dim_cap)
    : factors_(std::move(factors)), max_len_(max_len) {
    const int n = num_factors();
    if (n < 1) throw StructuralError("free product needs at least one factor");
    if (max_len < 0) throw StructuralError("max_len must be nonnegative");
    for (const auto& f : factors_)
        if (f.dim < 1 || f.centred_basis.rows() != f.dim) throw StructuralError("malformed factor " + f.name);

    // Count first so oversized requests fail before allocating.
    std::vector<double> by_head(n, 0.0);
    double total = 1.0, level_total = 1.0;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<double> next(n);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] = factors_[i].centred_dim() * (level_total - by_head[i]);
            sum += next[i];
        }
        by_head = next;
        level_total = sum;
        total += sum;
        if (total > static_cast<double>(dim_cap))
            throw BudgetError("Fock dimension exceeds cap " + std::to_string(dim_cap) + " at length " + std::to_string(len));
    }

    const size_t d = static_cast<size_t>(total);
    length_.reserve(d);
    head_.reserve(d);
    comp_.reserve(d);
    tail_.reserve(d);
    length_.push_back(0);
    head_.push_back(-1);
    comp_.push_back(-1);
    tail_.push_back(-1);
    level_end_.push_back(1);
    int begin = 0;
    for (int len = 1; len <= max_len; ++len) {
        const int end = level_end_.back();
        prepend_base_.resize(static_cast<size_t>(end) * n, -1);
        for (int s = begin; s < end; ++s)
            for (int i = 0; i < n; ++i) {
                if (head_[s] == i) continue;
                prepend_base_[static_cast<size_t>(s) * n + i] = dim();
                for (int c = 0; c < factors_[i].centred_dim(); ++c) {
                    length_.push_back(len);
                    head_.push_back(i);
                    comp_.push_back(c);
                    tail_.push_back(s);
                }
            }
        begin = end;
        level_end_.push_back(dim());
    }
}

int FockSpace::prepend(int s, int i, int c) const {
    if (length_[s] >= max_len_) return -1;
    int base = prepend_base_[static_cast<size_t>(s) * num_factors() + i];
    return base < 0 ? -1 : base + c;
}

int FockSpace::count_up_to(int len) const {
    if (len < 0) return 0;
    return level_end_[std::min(len, max_len_)];
}

std::string FockSpace::word(int s) const {
    if (s == 0) return "Omega";
    std::ostringstream os;
    for (bool first = true; s > 0; s = tail_[s], first = false)
        os << (first ? "" : " ") << "(" << head_[s] << "," << comp_[s] << ")";
    return os.str();
}

FreeOperator free_action(const FockSpace& f, int i, const Mat& a) {
    if (i < 0 || i >= f.num_factors()) throw StructuralError("factor index out of range");
    const auto& fac = f.factor(i);
    if (a.rows() != fac.dim || a.cols() != fac.dim) throw StructuralError("element has the wrong size for factor " + fac.name);
    const int m = fac.dim;
    Mat u(m, m);
    u.col(0) = fac.xi;
    u.rightCols(m - 1) = fac.centred_basis;
    Mat b = u.adjoint() * a * u;

    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(static_cast<size_t>(f.dim()) * m);
    for (int s = 0; s < f.dim(); ++s) {
        if (f.head(s) != i) {
            if (b(0, 0) != cd(0.0)) trip.emplace_back(s, s, b(0, 0));
            for (int c = 0; c < m - 1; ++c) {
                int t = f.prepend(s, i, c);
                if (t >= 0 && b(c + 1, 0) != cd(0.0)) trip.emplace_back(t, s, b(c + 1, 0));
            }
        } else {
            const int c1 = f.component(s) + 1, tail = f.tail(s);
            if (b(0, c1) != cd(0.0)) trip.emplace_back(tail, s, b(0, c1));
            for (int c = 0; c < m - 1; ++c)
                if (b(c + 1, c1) != cd(0.0)) trip.emplace_back(f.prepend(tail, i, c), s, b(c + 1, c1));
        }
    }
    FreeOperator out;
    out.factor = i;
    out.element = a;
    out.op.resize(f.dim(), f.dim());
    out.op.setFromTriplets(trip.begin(), trip.end());
    out.op.makeCompressed();
    return out;
}

Vec vacuum(const FockSpace& f) {
    Vec v = Vec::Zero(f.dim());
    v(0) = 1.0;
    return v;
}

VacuumValue vacuum_state(const FockSpace& f, const std::vector<const FreeOperator*>& product) {
    Vec v = vacuum(f);
    for (auto it = product.rbegin(); it != product.rend(); ++it) v = (*it)->op * v;
    return {v(0), static_cast<int>(product.size()) <= f.max_len()};
}

void AmplifiedOperator::add(const Mat& a, const SpMat& x) {
    if (a.rows() != k || a.cols() != k) throw StructuralError("amplification has the wrong size");
    if (!ops.empty() && (x.rows() != ops[0].rows() || x.cols() != ops[0].cols()))
        throw StructuralError("operators act on different spaces");
    coeffs.push_back(a);
    ops.push_back(x);
}

Mat AmplifiedOperator::apply(const Mat& y) const {
    Mat out = Mat::Zero(ops.empty() ? y.rows() : ops[0].rows(), k);
    for (size_t t = 0; t < ops.size(); ++t) accumulate(out, ops[t], y, coeffs[t]);
    return out;
}

Mat AmplifiedOperator::apply_adjoint(const Mat& y) const {
    Mat out = Mat::Zero(ops.empty() ? y.rows() : ops[0].cols(), k);
    for (size_t t = 0; t < ops.size(); ++t) accumulate(out, ops[t].adjoint(), y, Mat(coeffs[t].adjoint()));
    return out;
}

AmplifiedOperator scalar_operator(const SpMat& x) {
    AmplifiedOperator out;
    out.add(Mat::Ones(1, 1), x);
    return out;
}

CompressionResult compression_norm(const FockSpace& f, const AmplifiedOperator& x, int domain_len,
                                   const NormOptions& opts, const Mat* warm) {
    if (domain_len < 0 || domain_len > f.max_len() - 1)
        throw StructuralError("domain length must lie in [0, max_len - 1] so x P is computed exactly");
    if (!x.ops.empty() && x.ops[0].rows() != f.dim()) throw StructuralError("operator does not act on this Fock space");
    const int dd = f.count_up_to(domain_len);
    const int k = x.k;

    std::vector<SpMat> blocks;
    std::vector<Eigen::SparseMatrix<cd, Eigen::RowMajor>> adjoints;
    std::vector<Mat> adj_coeffs;
    blocks.reserve(x.ops.size());
    for (const auto& op : x.ops) {
        blocks.emplace_back(op.leftCols(dd));
        adjoints.emplace_back(blocks.back().adjoint());
        adj_coeffs.emplace_back(x.coeffs[adj_coeffs.size()].adjoint());
    }
    auto forward = [&](const Mat& y) {
        Mat z = Mat::Zero(f.dim(), k);
        for (size_t t = 0; t < blocks.size(); ++t) accumulate(z, blocks[t], y, x.coeffs[t]);
        return z;
    };
    auto gram = [&](const Mat& y) {
        Mat z = forward(y);
        Mat w = Mat::Zero(dd, k);
        for (size_t t = 0; t < blocks.size(); ++t) accumulate(w, adjoints[t], z, adj_coeffs[t]);
        return w;
    };

    Rng rng(opts.seed);
    Mat v0 = rng.cmat(dd, k);
    Mat warm_pad;
    double warm_value = -1.0;
    if (warm != nullptr && warm->cols() == k && warm->rows() <= dd && warm->norm() > 0.0) {
        warm_pad = Mat::Zero(dd, k);
        warm_pad.topRows(warm->rows()) = *warm;
        warm_pad /= warm_pad.norm();
        warm_value = forward(warm_pad).norm();
        v0 = warm_pad + 1e-3 * v0 / v0.norm();
    }
    v0 /= v0.norm();

    const int m = std::max(2, std::min(opts.krylov, dd * k));
    CompressionResult res;
    double prev = -1.0;
    bool converged = false;
    Mat y = v0;
    for (int r = 0; r < opts.max_restarts && !converged; ++r) {
        std::vector<Mat> basis{v0};
        std::vector<double> alpha, beta;
        bool invariant = false;
        for (int j = 0; j < m; ++j) {
            Mat w = gram(basis[j]);
            double a = frob_dot(w, basis[j]).real();
            alpha.push_back(a);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) w -= frob_dot(w, q) * q;
            double b = w.norm();
            if (b <= 1e-13 * std::max(1.0, std::abs(a))) {
                invariant = true;
                break;
            }
            if (j + 1 < m) {
                beta.push_back(b);
                basis.push_back(w / b);
            }
        }
        const int sz = static_cast<int>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(sz, sz);
        for (int i = 0; i < sz; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < sz) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(sz - 1);
        y = Mat::Zero(dd, k);
        for (int i = 0; i < sz; ++i) y += es.eigenvectors()(i, sz - 1) * basis[i];
        y /= y.norm();
        res.restarts = r + 1;
        res.last_change = prev < 0.0 ? std::abs(theta) : std::abs(theta - prev);
        if (invariant || res.last_change <= opts.tol * std::max(theta, 1e-300) || theta <= 1e-300) converged = true;
        prev = theta;
        v0 = y;
    }
    if (!converged) {
        std::ostringstream os;
        os << "compression norm did not converge after " << res.restarts << " restarts (last change " << res.last_change
           << ", domain " << domain_len << ")";
        throw NumericalDegeneracy(os.str());
    }
    res.value = forward(y).norm();
    res.vector = y;
    if (warm_value > res.value) {
        res.value = warm_value;
        res.vector = warm_pad;
    }
    return res;
}

std::vector<double> compression_norm_sequence(const FockSpace& f, const AmplifiedOperator& x, int max_domain,
                                              const NormOptions& opts) {
    std::vector<double> out;
    Mat prev;
    for (int len = 0; len <= max_domain; ++len) {
        auto r = compression_norm(f, x, len, opts, len == 0 ? nullptr : &prev);
        out.push_back(r.value);
        prev = r.vector;
    }
    return out;
}

KhintchineReport khintchine_check(const FockSpace& f, const std::vector<KhintchineTerm>& terms, const NormOptions& opts) {
    if (terms.empty()) throw StructuralError("empty family");
    const int k = static_cast<int>(terms[0].a.rows());
    std::vector<bool> seen(f.num_factors(), false);
    AmplifiedOperator x;
    x.k = k;
    Mat row = Mat::Zero(k, k), col = Mat::Zero(k, k);
    KhintchineReport rep;
    for (const auto& term : terms) {
        if (term.factor < 0 || term.factor >= f.num_factors()) throw StructuralError("factor index out of range");
        if (seen[term.factor]) throw StructuralError("each factor may appear once");
        seen[term.factor] = true;
        const auto& fac = f.factor(term.factor);
        const double xn = spectral_norm(term.x);
        if (std::abs(fac.state(term.x)) > 1e-10 * std::max(1.0, xn))
            throw InvalidInstance("element for factor " + std::to_string(term.factor) + " is not centred");
        x.add(term.a, free_action(f, term.factor, term.x).op);
        rep.max_single = std::max(rep.max_single, spectral_norm(term.a) * xn);
        row += term.a.adjoint() * term.a * fac.state(term.x.adjoint() * term.x).real();
        col += term.a * term.a.adjoint() * fac.state(term.x * term.x.adjoint()).real();
    }
    rep.row = std::sqrt(spectral_norm(row));
    rep.col = std::sqrt(spectral_norm(col));
    rep.rhs_max = std::max({rep.max_single, rep.row, rep.col});
    rep.domain_len = f.max_len() - 1;
    Mat start = Mat::Zero(1, k);
    start.row(0) = Eigen::RowVectorXcd::Ones(k) / std::sqrt(static_cast<double>(k));
    rep.lhs_cert = compression_norm(f, x, rep.domain_len, opts, &start).value;
    rep.ratio = rep.rhs_max > 0.0 ? rep.lhs_cert / rep.rhs_max : 0.0;
    rep.slack = std::max(0.0, rep.rhs_max - rep.lhs_cert);
    rep.upper_ok = rep.lhs_cert <= 3.0 * rep.rhs_max + 1e-8;
    return rep;
}

std::pair<double, double> coefficient_constants(const Corepresentation& u) {
    const auto& g = u.owner;
    const auto& gns = g->gns();
    const auto& blocks = g->blocks();
    const int n = g->dim(), dd = u.d * u.d;
    Vec xi = gns.lambda(unit_element(g).coeffs);

    Mat coef(n, dd), img(gns.gns_dim, dd), img_adj(gns.gns_dim, dd);
    for (int a = 0; a < dd; ++a) {
        coef.col(a) = u.entries[a];
        Mat la = gns.left_action(u.entries[a]);
        img.col(a) = la * xi;
        img_adj.col(a) = la.adjoint() * xi;
    }
    Mat gm = img.adjoint() * img;
    Eigen::SelfAdjointEigenSolver<Mat> es(gm);
    const double top = es.eigenvalues().maxCoeff();
    int keep = 0;
    for (int i = 0; i < dd; ++i)
        if (es.eigenvalues()(i) > 1e-12 * top) ++keep;
    if (keep == 0) throw InvalidInstance("coefficient space is zero");
    Mat p = es.eigenvectors().rightCols(keep) * es.eigenvalues().tail(keep).cwiseInverse().cwiseSqrt().asDiagonal();

    auto top_eig = [&](const Mat& form) {
        Mat h = p.adjoint() * form * p;
        h = 0.5 * (h + h.adjoint()).eval();
        return Eigen::SelfAdjointEigenSolver<Mat>(h, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    };
    double c2 = std::sqrt(std::max(0.0, top_eig(Mat((img_adj.adjoint() * img_adj).conjugate()))));

    double c1 = 0.0;
    int offset = 0;
    for (const auto& b : blocks.blocks) {
        const int s2 = b.size * b.size;
        Mat r = blocks.forward_matrix.middleRows(offset, s2) * coef;
        c1 = std::max(c1, top_eig(Mat(r.adjoint() * r)));
        offset += s2;
    }
    return {std::sqrt(c1), c2};
}

NormEquivalenceReport norm_equivalence(const Corepresentation& u, int copies, int max_len, int samples,
                                       std::uint64_t seed, const NormOptions& opts) {
    if (copies < 1 || max_len < 1 || samples < 1) throw StructuralError("need copies, max_len and samples >= 1");
    const auto& g = u.owner;
    std::vector<FreeFactor> factors(copies, group_factor(g));
    FockSpace f(std::move(factors), max_len);

    NormEquivalenceReport rep;
    std::tie(rep.c1, rep.c2) = coefficient_constants(u);
    rep.bound = 3.0 * std::max(rep.c1, rep.c2);
    rep.samples = samples;
    rep.min_ratio = 1e300;

    const int dd = u.d * u.d;
    std::vector<Mat> coeff_ops(dd);
    for (int a = 0; a < dd; ++a) coeff_ops[a] = g->gns().left_action(u.entries[a]);

    Rng rng(seed);
    Mat start = Mat::Zero(1, 1);
    start(0, 0) = 1.0;
    for (int t = 0; t < samples; ++t) {
        AmplifiedOperator x;
        for (int i = 0; i < copies; ++i) {
            Vec c = rng.cvec(dd);
            Mat el = Mat::Zero(coeff_ops[0].rows(), coeff_ops[0].cols());
            for (int a = 0; a < dd; ++a) el += c(a) * coeff_ops[a];
            x.add(Mat::Ones(1, 1), free_action(f, i, el).op);
        }
        const double omega_norm = x.apply(Mat(vacuum(f))).norm();
        NormOptions o = opts;
        o.seed = rng.next_seed();
        const double val = compression_norm(f, x, max_len - 1, o, &start).value;
        const double ratio = val / omega_norm;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_lower_violation = std::max(rep.max_lower_violation, omega_norm - val);
    }
    return rep;
}

NonCbRep build_noncb_rep(int copies, int max_len, long dim_cap) {
    if (copies < 1 || max_len < 1) throw StructuralError("need copies >= 1 and max_len >= 1");
    auto g = builtin("c_z2");
    std::vector<FreeFactor> factors(copies, group_factor(g));
    NonCbRep rep;
    rep.fock = std::make_shared<FockSpace>(std::move(factors), max_len, dim_cap);
    rep.copies = copies;
    Vec character(2);
    character << 1.0, -1.0;
    Mat el = factor_element(g, character);
    rep.vpi.k = copies + 1;
    for (int i = 0; i < copies; ++i) {
        rep.u.push_back(free_action(*rep.fock, i, el));
        Mat a = Mat::Zero(copies + 1, copies + 1);
        a(i + 1, i + 1) = 1.0;
        a(i + 1, 0) = 1.0;
        rep.vpi.add(a, rep.u.back().op);
    }
    return rep;
}

Vec phi_map(const NonCbRep& rep, const Vec& zeta, const Vec& eta) {
    if (zeta.size() != rep.fock->dim() || eta.size() != rep.fock->dim()) throw StructuralError("vector has the wrong size");
    Vec out(rep.copies);
    for (int i = 0; i < rep.copies; ++i) out(i) = eta.dot(rep.u[i].op * zeta);
    return out;
}

Mat theta_map(const Vec& a) {
    const int n = static_cast<int>(a.size());
    Mat m = Mat::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        m(i + 1, i + 1) += a(i);
        m(i + 1, 0) += a(i);
    }
    return m;
}

Mat pi_rep(const NonCbRep& rep, const Vec& zeta, const Vec& eta) { return theta_map(phi_map(rep, zeta, eta)); }

NonCbProbe cb_vs_bounded_probe(const NonCbRep& rep, int restarts, std::uint64_t seed, const NormOptions& opts) {
    const auto& f = *rep.fock;
    const int n = rep.copies;
    NonCbProbe out;
    out.domain_len = f.max_len() - 1;
    out.analytic_floor = std::sqrt(static_cast<double>(n)) - 1.0;

    Mat start = Mat::Zero(1, n + 1);
    start(0, 0) = 1.0;
    out.cb_lower = compression_norm(f, rep.vpi, out.domain_len, opts, &start).value;

    // Coefficient of pi-tilde at alpha = N^{-1/2} sum delta_i, beta = delta_0.
    Vec xo = Vec::Zero(f.dim());
    for (int i = 0; i < n; ++i) xo += rep.u[i].op * vacuum(f);
    xo /= std::sqrt(static_cast<double>(n));
    out.multiplier_norm = xo.cwiseAbs().sum();

    Rng rng(seed);
    const int dd = f.count_up_to(out.domain_len);
    out.phi_star_lower = 1e300;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        Vec a = rng.cvec(n + 1).normalized(), b = rng.cvec(n + 1).normalized();
        double best = 0.0;
        for (int it = 0; it < 8; ++it) {
            AmplifiedOperator y;
            for (int i = 0; i < n; ++i) y.add(Mat::Constant(1, 1, std::conj(b(i + 1)) * (a(i + 1) + a(0))), rep.u[i].op);
            NormOptions o = opts;
            o.seed = rng.next_seed();
            auto cr = compression_norm(f, y, out.domain_len, o);
            Vec zeta = Vec::Zero(f.dim());
            zeta.head(dd) = cr.vector.col(0);
            Vec eta = y.apply(Mat(zeta)).col(0);
            if (eta.norm() < 1e-300) break;
            eta /= eta.norm();
            Mat p = pi_rep(rep, zeta, eta);
            Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
            const double val = svd.singularValues()(0);
            if (val <= best * (1.0 + 1e-10)) {
                best = std::max(best, val);
                break;
            }
            best = val;
            a = svd.matrixV().col(0);
            b = svd.matrixU().col(0);
        }
        out.pi_search = std::max(out.pi_search, best);

        Vec rho = rng.cvec(n);
        AmplifiedOperator x;
        for (int i = 0; i < n; ++i) x.add(Mat::Constant(1, 1, rho(i)), rep.u[i].op);
        NormOptions o = opts;
        o.seed = rng.next_seed();
        Mat st = Mat::Ones(1, 1);
        out.phi_star_lower = std::min(out.phi_star_lower, compression_norm(f, x, out.domain_len, o, &st).value / rho.norm());
    }
    return out;
}

}  // namespace qglab

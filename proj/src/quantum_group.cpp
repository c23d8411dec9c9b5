#include "qglab/quantum_group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "qglab/errors.hpp"

namespace qglab {

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw StructuralError(what);
}

double max_diff(const Vec& a, const Vec& b) { return max_abs(Vec(a - b)); }
double max_diff(const Mat& a, const Mat& b) { return max_abs(Mat(a - b)); }

}  // namespace

Mat GnsData::left_action(const Vec& a) const {
    Mat out = Mat::Zero(gns_dim, gns_dim);
    for (int k = 0; k < a.size(); ++k)
        if (a(k) != cd(0.0)) out += a(k) * left_basis[k];
    return out;
}

std::vector<int> BlockDecomposition::sizes() const {
    std::vector<int> out;
    for (const auto& b : blocks) out.push_back(b.size);
    return out;
}

std::vector<Mat> BlockDecomposition::unflatten(const Vec& flat) const {
    std::vector<Mat> out;
    int off = 0;
    for (const auto& b : blocks) {
        Mat m(b.size, b.size);
        for (int p = 0; p < b.size; ++p)
            for (int q = 0; q < b.size; ++q) m(p, q) = flat(off++);
        out.push_back(m);
    }
    return out;
}

Vec BlockDecomposition::flatten(const std::vector<Mat>& parts) const {
    int total = 0;
    for (const auto& b : blocks) total += b.size * b.size;
    Vec out(total);
    int off = 0;
    for (size_t k = 0; k < blocks.size(); ++k)
        for (int p = 0; p < blocks[k].size; ++p)
            for (int q = 0; q < blocks[k].size; ++q) out(off++) = parts[k](p, q);
    return out;
}

std::vector<Mat> BlockDecomposition::forward(const Vec& coeffs) const { return unflatten(forward_matrix * coeffs); }

Vec BlockDecomposition::backward(const std::vector<Mat>& parts) const { return backward_matrix * flatten(parts); }

FiniteQuantumGroup::FiniteQuantumGroup(QuantumGroupData data) : data_(std::move(data)) {
    const int n = data_.dim;
    require(n > 0, "dim must be positive");
    require(data_.mult.n == n, "mult has wrong dimension");
    require(data_.coproduct.n == n, "coproduct has wrong dimension");
    require(data_.unit.size() == n, "unit has wrong length");
    require(data_.counit.size() == n, "counit has wrong length");
    require(data_.haar.size() == n, "haar has wrong length");
    require(data_.antipode.rows() == n && data_.antipode.cols() == n, "antipode has wrong shape");
    require(data_.star.rows() == n && data_.star.cols() == n, "star has wrong shape");
    if (data_.basis_labels.empty())
        for (int i = 0; i < n; ++i) data_.basis_labels.push_back("e" + std::to_string(i));
    require(static_cast<int>(data_.basis_labels.size()) == n, "basis_labels has wrong length");
    left_coeff_.resize(n);
    for (int k = 0; k < n; ++k) {
        Mat l(n, n);
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < n; ++m) l(m, j) = data_.mult(k, j, m);
        left_coeff_[k] = l;
    }
}

Vec FiniteQuantumGroup::basis(int i) const {
    Vec e = Vec::Zero(dim());
    e(i) = 1.0;
    return e;
}

Mat FiniteQuantumGroup::left_mult(const Vec& a) const {
    Mat out = Mat::Zero(dim(), dim());
    for (int k = 0; k < dim(); ++k)
        if (a(k) != cd(0.0)) out += a(k) * left_coeff_[k];
    return out;
}

Mat FiniteQuantumGroup::right_mult(const Vec& a) const {
    const int n = dim();
    Mat out = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (a(i) == cd(0.0)) continue;
            for (int m = 0; m < n; ++m) out(m, j) += a(i) * data_.mult(j, i, m);
        }
    return out;
}

Vec FiniteQuantumGroup::mul(const Vec& a, const Vec& b) const { return left_mult(a) * b; }

Vec FiniteQuantumGroup::star(const Vec& a) const { return data_.star.transpose() * a.conjugate(); }

Vec FiniteQuantumGroup::antipode(const Vec& a) const { return data_.antipode.transpose() * a; }

cd FiniteQuantumGroup::counit(const Vec& a) const { return data_.counit.cwiseProduct(a).sum(); }

cd FiniteQuantumGroup::haar(const Vec& a) const { return data_.haar.cwiseProduct(a).sum(); }

Mat FiniteQuantumGroup::coproduct(const Vec& a) const {
    const int n = dim();
    Mat out = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        if (a(i) != cd(0.0)) out += a(i) * data_.coproduct.slice(i);
    return out;
}

Mat FiniteQuantumGroup::tensor_mul(const Mat& p, const Mat& q) const {
    const int n = dim();
    Mat out = Mat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        if (p.row(a).cwiseAbs().maxCoeff() == 0.0) continue;
        Mat lq = left_coeff_[a] * q;
        for (int b = 0; b < n; ++b)
            if (p(a, b) != cd(0.0)) out += p(a, b) * lq * left_coeff_[b].transpose();
    }
    return out;
}

bool FiniteQuantumGroup::is_commutative(double tol) const {
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j)
            if (max_diff(mul(basis(i), basis(j)), mul(basis(j), basis(i))) > tol) return false;
    return true;
}

bool FiniteQuantumGroup::is_cocommutative(double tol) const {
    for (int i = 0; i < dim(); ++i) {
        Mat p = data_.coproduct.slice(i);
        if (max_diff(p, Mat(p.transpose())) > tol) return false;
    }
    return true;
}

namespace {

std::unique_ptr<GnsData> build_gns(const FiniteQuantumGroup& g) {
    const int n = g.dim();
    Mat gram(n, n);
    for (int j = 0; j < n; ++j) {
        Vec ej_star = g.star(g.basis(j));
        for (int i = 0; i < n; ++i) gram(j, i) = g.haar(g.mul(ej_star, g.basis(i)));
    }
    if (max_diff(gram, Mat(gram.adjoint())) > 1e-8)
        throw InvalidInstance("Gram matrix h(e_j* e_i) is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.adjoint()));
    const RVec& ev = es.eigenvalues();
    if (ev(0) <= 1e-10 * std::max(1.0, ev(n - 1)))
        throw InvalidInstance("Haar state is not faithful (Gram eigenvalue " + std::to_string(ev(0)) + ")");
    auto out = std::make_unique<GnsData>();
    out->gns_dim = n;
    out->lambda_map = es.eigenvectors() * ev.cwiseSqrt().cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
    out->lambda_inv =
        es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
    for (int k = 0; k < n; ++k)
        out->left_basis.push_back(out->lambda_map * g.left_mult(g.basis(k)) * out->lambda_inv);
    out->modular_conj = out->lambda_map * g.data().star.transpose() * out->lambda_inv.conjugate();
    out->modular_op = Mat::Identity(n, n);
    return out;
}

// Split sorted eigenvalues into clusters separated by more than thr.
std::vector<std::pair<int, int>> clusters(const RVec& ev, double thr, double* min_gap) {
    std::vector<std::pair<int, int>> out;
    int start = 0;
    for (int i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev(i) - ev(i - 1) > thr) {
            out.push_back({start, i - start});
            if (i < ev.size()) *min_gap = std::min(*min_gap, ev(i) - ev(i - 1));
            start = i;
        }
    }
    return out;
}

}  // namespace

const GnsData& FiniteQuantumGroup::gns() const {
    std::call_once(gns_once_, [this] { gns_ = build_gns(*this); });
    return *gns_;
}

const BlockDecomposition& FiniteQuantumGroup::blocks() const {
    std::call_once(blocks_once_, [this] {
        blocks_ = std::make_unique<BlockDecomposition>(block_decompose(*this, 0x5eed5eedULL));
    });
    return *blocks_;
}

BlockDecomposition block_decompose(const FiniteQuantumGroup& g, std::uint64_t seed, int max_attempts) {
    const int n = g.dim();
    const GnsData& gd = g.gns();
    std::vector<Mat> lc;
    for (int k = 0; k < n; ++k) lc.push_back(g.left_mult(g.basis(k)));
    Mat comm(static_cast<Eigen::Index>(n) * n * n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            Mat c = lc[k] * lc[i] - lc[i] * lc[k];
            comm.block(static_cast<Eigen::Index>(i) * n * n, k, n * n, 1) = vec(c);
        }
    Mat center = nullspace(comm, 1e-9);
    const int nblocks = static_cast<int>(center.cols());

    Rng rng(seed);
    double last_gap = 0.0;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Vec z = center * rng.cvec(nblocks);
        z = z + g.star(z);
        Mat h = gd.left_action(z);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
        double scale = es.eigenvalues().cwiseAbs().maxCoeff() + 1.0;
        double gap = scale;
        auto cl = clusters(es.eigenvalues(), 1e-6 * scale, &gap);
        last_gap = gap;
        if (static_cast<int>(cl.size()) != nblocks) continue;

        BlockDecomposition bd;
        bd.gap = gap;
        bd.attempts = attempt;
        bool ok = true;
        for (auto [start, len] : cl) {
            int nk = static_cast<int>(std::lround(std::sqrt(static_cast<double>(len))));
            if (nk * nk != len) {
                ok = false;
                break;
            }
            Mat p = es.eigenvectors().middleCols(start, len);
            Mat iso = p;
            if (nk > 1) {
                Vec y = rng.cvec(n);
                y = y + g.star(y);
                Mat rg = gd.lambda_map * g.right_mult(y) * gd.lambda_inv;
                Mat k = p.adjoint() * rg * p;
                Eigen::SelfAdjointEigenSolver<Mat> rs(0.5 * (k + k.adjoint()));
                double rscale = rs.eigenvalues().cwiseAbs().maxCoeff() + 1.0;
                double rgap = rscale;
                auto sub = clusters(rs.eigenvalues(), 1e-6 * rscale, &rgap);
                bd.gap = std::min(bd.gap, rgap);
                if (static_cast<int>(sub.size()) != nk) {
                    ok = false;
                    break;
                }
                for (auto [s, l] : sub)
                    if (l != nk) ok = false;
                if (!ok) break;
                iso = p * rs.eigenvectors().leftCols(nk);
            }
            bd.blocks.push_back({nk, iso});
        }
        if (!ok) continue;
        std::stable_sort(bd.blocks.begin(), bd.blocks.end(),
                         [](const Block& a, const Block& b) { return a.size < b.size; });
        bd.forward_matrix = Mat(n, n);
        for (int j = 0; j < n; ++j) {
            std::vector<Mat> parts;
            for (const auto& b : bd.blocks) parts.push_back(b.isometry.adjoint() * gd.left_basis[j] * b.isometry);
            bd.forward_matrix.col(j) = bd.flatten(parts);
        }
        if (min_singular_value(bd.forward_matrix) < 1e-8) continue;
        bd.backward_matrix = bd.forward_matrix.inverse();
        double err = 0.0;
        for (int i = 0; i < n && err <= 1e-8; ++i) {
            auto fi = bd.forward(g.basis(i));
            auto fis = bd.forward(g.star(g.basis(i)));
            for (size_t k = 0; k < fi.size(); ++k) err = std::max(err, max_diff(fis[k], Mat(fi[k].adjoint())));
            for (int j = 0; j < n; ++j) {
                auto fj = bd.forward(g.basis(j));
                auto fij = bd.forward(g.mul(g.basis(i), g.basis(j)));
                for (size_t k = 0; k < fi.size(); ++k) err = std::max(err, max_diff(fij[k], Mat(fi[k] * fj[k])));
            }
        }
        if (err > 1e-8) continue;
        return bd;
    }
    throw NumericalDegeneracy("block separation failed after " + std::to_string(max_attempts) +
                              " attempts; last eigenvalue gap " + std::to_string(last_gap));
}

const GnsData& gns(const QG& g) { return g->gns(); }
const BlockDecomposition& block_decompose(const QG& g) { return g->blocks(); }

QG make_group(QuantumGroupData data) { return std::make_shared<const FiniteQuantumGroup>(std::move(data)); }

AlgebraElement element(const QG& g, const Vec& coeffs) {
    if (coeffs.size() != g->dim()) throw StructuralError("coefficient vector has wrong length");
    return {g, coeffs};
}

AlgebraElement basis_element(const QG& g, int i) { return {g, g->basis(i)}; }
AlgebraElement unit_element(const QG& g) { return {g, g->data().unit}; }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.owner != b.owner) throw OwnerMismatch();
    return {a.owner, a.owner->mul(a.coeffs, b.coeffs)};
}

AlgebraElement adjoint(const AlgebraElement& a) { return {a.owner, a.owner->star(a.coeffs)}; }

Vec apply_coproduct(const AlgebraElement& a) {
    Mat p = a.owner->coproduct(a.coeffs);
    Mat pt = p.transpose();
    return vec(pt);
}

AlgebraElement apply_antipode(const AlgebraElement& a) { return {a.owner, a.owner->antipode(a.coeffs)}; }
cd apply_counit(const AlgebraElement& a) { return a.owner->counit(a.coeffs); }
cd apply_haar(const AlgebraElement& a) { return a.owner->haar(a.coeffs); }
double operator_norm(const AlgebraElement& a) { return spectral_norm(a.owner->gns().left_action(a.coeffs)); }

double ValidationReport::violation(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c.violation;
    throw StructuralError("no axiom named " + name);
}

ValidationReport validate(const FiniteQuantumGroup& g, double tol) {
    const int n = g.dim();
    const auto& d = g.data();
    ValidationReport rep;
    rep.tol = tol;
    auto add = [&](const std::string& name, double v) { rep.checks.push_back({name, v, v <= tol}); };

    std::vector<Vec> e(n), es(n);
    for (int i = 0; i < n; ++i) {
        e[i] = g.basis(i);
        es[i] = g.star(e[i]);
    }
    std::vector<std::vector<Vec>> prod(n, std::vector<Vec>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) prod[i][j] = g.mul(e[i], e[j]);
    std::vector<Mat> cop(n);
    for (int i = 0; i < n; ++i) cop[i] = d.coproduct.slice(i);

    double v = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) v = std::max(v, max_diff(g.mul(prod[i][j], e[k]), g.mul(e[i], prod[j][k])));
    add("associativity", v);

    v = 0.0;
    for (int i = 0; i < n; ++i)
        v = std::max({v, max_diff(g.mul(d.unit, e[i]), e[i]), max_diff(g.mul(e[i], d.unit), e[i])});
    add("unit", v);

    v = std::abs(g.counit(d.unit) - 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v = std::max(v, std::abs(g.counit(prod[i][j]) - d.counit(i) * d.counit(j)));
    add("counit_multiplicative", v);

    v = 0.0;
    for (int i = 0; i < n; ++i) v = std::max(v, std::abs(g.counit(es[i]) - std::conj(d.counit(i))));
    add("counit_star", v);

    v = 0.0;
    for (int i = 0; i < n; ++i) {
        const Mat& p = cop[i];
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    cd left = 0.0, right = 0.0;
                    for (int j = 0; j < n; ++j) {
                        left += p(j, c) * d.coproduct(j, a, b);
                        right += p(a, j) * d.coproduct(j, b, c);
                    }
                    v = std::max(v, std::abs(left - right));
                }
    }
    add("coassociativity", v);

    v = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec l = cop[i].transpose() * d.counit;
        Vec r = cop[i] * d.counit;
        v = std::max({v, max_diff(l, e[i]), max_diff(r, e[i])});
    }
    add("counit_law", v);

    v = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v = std::max(v, max_diff(g.coproduct(prod[i][j]), g.tensor_mul(cop[i], cop[j])));
    add("coproduct_multiplicative", v);

    add("coproduct_unital", max_diff(g.coproduct(d.unit), Mat(d.unit * d.unit.transpose())));

    v = 0.0;
    for (int i = 0; i < n; ++i) {
        Mat lhs = g.coproduct(es[i]);
        Mat rhs = d.star.transpose() * cop[i].conjugate() * d.star;
        v = std::max(v, max_diff(lhs, rhs));
    }
    add("coproduct_star", v);

    auto multiply_legs = [&](const Mat& p) {
        Vec out = Vec::Zero(n);
        for (int j = 0; j < n; ++j) out += g.left_mult(e[j]) * p.row(j).transpose();
        return out;
    };
    v = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec target = d.counit(i) * d.unit;
        v = std::max(v, max_diff(multiply_legs(d.antipode.transpose() * cop[i]), target));
        v = std::max(v, max_diff(multiply_legs(cop[i] * d.antipode), target));
    }
    add("antipode_law", v);

    v = 0.0;
    for (int i = 0; i < n; ++i) v = std::max(v, max_diff(g.star(es[i]), e[i]));
    add("star_involutive", v);

    v = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v = std::max(v, max_diff(g.star(prod[i][j]), g.mul(es[j], es[i])));
    add("star_antimultiplicative", v);

    v = 0.0;
    for (int i = 0; i < n; ++i) v = std::max(v, max_diff(g.antipode(g.star(g.antipode(es[i]))), e[i]));
    add("antipode_star", v);

    add("antipode_involutive", max_diff(Mat(d.antipode * d.antipode), Mat(Mat::Identity(n, n))));

    v = 0.0;
    for (int i = 0; i < n; ++i) v = std::max(v, std::abs(g.haar(g.antipode(e[i])) - d.haar(i)));
    add("haar_antipode", v);

    add("haar_normalized", std::abs(g.haar(d.unit) - 1.0));

    {
        Mat gram(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) gram(j, i) = g.haar(g.mul(es[j], e[i]));
        double herm = max_diff(gram, Mat(gram.adjoint()));
        Eigen::SelfAdjointEigenSolver<Mat> gs(0.5 * (gram + gram.adjoint()));
        double lmin = gs.eigenvalues()(0);
        double viol = std::max(herm, std::max(0.0, -lmin));
        rep.checks.push_back({"haar_faithful_positive", viol, viol <= tol && lmin > tol});
    }

    v = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v = std::max(v, std::abs(g.haar(prod[i][j]) - g.haar(prod[j][i])));
    add("haar_tracial", v);

    double vl = 0.0, vr = 0.0;
    for (int i = 0; i < n; ++i) {
        Vec target = d.haar(i) * d.unit;
        vl = std::max(vl, max_diff(Vec(cop[i] * d.haar), target));
        vr = std::max(vr, max_diff(Vec(cop[i].transpose() * d.haar), target));
    }
    add("haar_left_invariance", vl);
    add("haar_right_invariance", vr);

    for (const auto& c : rep.checks) {
        rep.max_violation = std::max(rep.max_violation, c.violation);
        rep.pass = rep.pass && c.ok;
    }
    return rep;
}

GroupTable cyclic_group(int n) {
    GroupTable t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return t;
}

GroupTable klein_group() {
    GroupTable t(4, std::vector<int>(4));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
    return t;
}

GroupTable symmetric_group3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    GroupTable t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return t;
}

int group_identity(const GroupTable& t) {
    const int n = static_cast<int>(t.size());
    if (n == 0) throw InvalidInstance("empty group table");
    for (const auto& row : t) {
        if (static_cast<int>(row.size()) != n) throw InvalidInstance("group table is not square");
        for (int x : row)
            if (x < 0 || x >= n) throw InvalidInstance("group table entry out of range");
    }
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n; ++b) ok = ok && t[a][b] == b && t[b][a] == b;
        if (ok) e = a;
    }
    if (e < 0) throw InvalidInstance("group table has no identity");
    for (int a = 0; a < n; ++a) {
        bool has_inv = false;
        for (int b = 0; b < n; ++b) has_inv = has_inv || (t[a][b] == e && t[b][a] == e);
        if (!has_inv) throw InvalidInstance("group table element without inverse");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]]) throw InvalidInstance("group table is not associative");
    }
    return e;
}

namespace {

std::vector<int> inverses(const GroupTable& t, int e) {
    const int n = static_cast<int>(t.size());
    std::vector<int> inv(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (t[a][b] == e) inv[a] = b;
    return inv;
}

}  // namespace

QG from_function_algebra(const GroupTable& t, const std::string& name) {
    const int e = group_identity(t);
    const int n = static_cast<int>(t.size());
    auto inv = inverses(t, e);
    QuantumGroupData d;
    d.name = name;
    d.dim = n;
    for (int g = 0; g < n; ++g) d.basis_labels.push_back("delta_" + std::to_string(g));
    d.mult = Tensor3(n);
    d.coproduct = Tensor3(n);
    for (int g = 0; g < n; ++g) {
        d.mult(g, g, g) = 1.0;
        for (int h = 0; h < n; ++h) d.coproduct(t[g][h], g, h) += 1.0;
    }
    d.unit = Vec::Ones(n);
    d.counit = Vec::Zero(n);
    d.counit(e) = 1.0;
    d.antipode = Mat::Zero(n, n);
    for (int g = 0; g < n; ++g) d.antipode(g, inv[g]) = 1.0;
    d.star = Mat::Identity(n, n);
    d.haar = Vec::Constant(n, cd(1.0 / n));
    return make_group(std::move(d));
}

QG from_group_algebra(const GroupTable& t, const std::string& name) {
    const int e = group_identity(t);
    const int n = static_cast<int>(t.size());
    auto inv = inverses(t, e);
    QuantumGroupData d;
    d.name = name;
    d.dim = n;
    for (int g = 0; g < n; ++g) d.basis_labels.push_back("lambda_" + std::to_string(g));
    d.mult = Tensor3(n);
    d.coproduct = Tensor3(n);
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) d.mult(g, h, t[g][h]) = 1.0;
        d.coproduct(g, g, g) = 1.0;
    }
    d.unit = Vec::Zero(n);
    d.unit(e) = 1.0;
    d.counit = Vec::Ones(n);
    d.antipode = Mat::Zero(n, n);
    d.star = Mat::Zero(n, n);
    for (int g = 0; g < n; ++g) {
        d.antipode(g, inv[g]) = 1.0;
        d.star(g, inv[g]) = 1.0;
    }
    d.haar = Vec::Zero(n);
    d.haar(e) = 1.0;
    return make_group(std::move(d));
}

// Eight-dimensional algebra C^4 (+) M_2 with basis e1..e4, a11, a12, a21, a22.
QG kac_paljutkin() {
    const int n = 8;
    const std::vector<std::string> labels{"e1", "e2", "e3", "e4", "a11", "a12", "a21", "a22"};
    std::map<std::string, int> ix;
    for (int i = 0; i < n; ++i) ix[labels[i]] = i;

    QuantumGroupData d;
    d.name = "kac_paljutkin";
    d.dim = n;
    d.basis_labels = labels;
    d.mult = Tensor3(n);
    for (int k = 0; k < 4; ++k) d.mult(k, k, k) = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int l = 0; l < 2; ++l) d.mult(4 + 2 * i + j, 4 + 2 * j + l, 4 + 2 * i + l) = 1.0;

    struct Term {
        cd c;
        const char* l;
        const char* r;
    };
    const cd I(0.0, 1.0);
    const std::map<std::string, std::vector<Term>> cop{
        {"e1",
         {{1., "e1", "e1"}, {1., "e2", "e2"}, {1., "e3", "e3"}, {1., "e4", "e4"},
          {.5, "a11", "a11"}, {.5, "a12", "a12"}, {.5, "a21", "a21"}, {.5, "a22", "a22"}}},
        {"e2",
         {{1., "e1", "e2"}, {1., "e2", "e1"}, {1., "e3", "e4"}, {1., "e4", "e3"},
          {.5, "a11", "a22"}, {.5, "a22", "a11"}, {.5 * I, "a21", "a12"}, {-.5 * I, "a12", "a21"}}},
        {"e3",
         {{1., "e1", "e3"}, {1., "e3", "e1"}, {1., "e2", "e4"}, {1., "e4", "e2"},
          {.5, "a11", "a22"}, {.5, "a22", "a11"}, {-.5 * I, "a21", "a12"}, {.5 * I, "a12", "a21"}}},
        {"e4",
         {{1., "e1", "e4"}, {1., "e4", "e1"}, {1., "e2", "e3"}, {1., "e3", "e2"},
          {.5, "a11", "a11"}, {.5, "a22", "a22"}, {-.5, "a12", "a12"}, {-.5, "a21", "a21"}}},
        {"a11",
         {{1., "e1", "a11"}, {1., "a11", "e1"}, {1., "e2", "a22"}, {1., "a22", "e2"},
          {1., "e3", "a22"}, {1., "a22", "e3"}, {1., "e4", "a11"}, {1., "a11", "e4"}}},
        {"a12",
         {{1., "e1", "a12"}, {1., "a12", "e1"}, {I, "e2", "a21"}, {-I, "a21", "e2"},
          {-I, "e3", "a21"}, {I, "a21", "e3"}, {-1., "e4", "a12"}, {-1., "a12", "e4"}}},
        {"a21",
         {{1., "e1", "a21"}, {1., "a21", "e1"}, {-I, "e2", "a12"}, {I, "a12", "e2"},
          {I, "e3", "a12"}, {-I, "a12", "e3"}, {-1., "e4", "a21"}, {-1., "a21", "e4"}}},
        {"a22",
         {{1., "e1", "a22"}, {1., "a22", "e1"}, {1., "e2", "a11"}, {1., "a11", "e2"},
          {1., "e3", "a11"}, {1., "a11", "e3"}, {1., "e4", "a22"}, {1., "a22", "e4"}}},
    };
    d.coproduct = Tensor3(n);
    for (const auto& [k, terms] : cop)
        for (const auto& t : terms) d.coproduct(ix[k], ix[t.l], ix[t.r]) += t.c;

    d.unit = Vec::Zero(n);
    for (const char* l : {"e1", "e2", "e3", "e4", "a11", "a22"}) d.unit(ix[l]) = 1.0;
    d.counit = Vec::Zero(n);
    d.counit(ix["e1"]) = 1.0;
    d.antipode = Mat::Zero(n, n);
    d.star = Mat::Zero(n, n);
    for (int k = 0; k < 4; ++k) d.antipode(k, k) = d.star(k, k) = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d.antipode(4 + 2 * i + j, 4 + 2 * j + i) = d.star(4 + 2 * i + j, 4 + 2 * j + i) = 1.0;
    d.haar = Vec::Zero(n);
    for (int k = 0; k < 4; ++k) d.haar(k) = 0.125;
    d.haar(ix["a11"]) = d.haar(ix["a22"]) = 0.25;
    return make_group(std::move(d));
}

std::vector<std::string> builtin_names() {
    return {"c_z2",   "c_z3",   "c_z4",   "c_z2xz2",   "c_s3",  "grp_z2",
            "grp_z3", "grp_z4", "grp_z2xz2", "grp_s3", "kac_paljutkin"};
}

QG builtin(const std::string& name) {
    static const std::map<std::string, std::function<GroupTable()>> tables{
        {"z2", [] { return cyclic_group(2); }},
        {"z3", [] { return cyclic_group(3); }},
        {"z4", [] { return cyclic_group(4); }},
        {"z2xz2", [] { return klein_group(); }},
        {"s3", [] { return symmetric_group3(); }},
    };
    if (name == "kac_paljutkin") return kac_paljutkin();
    auto pos = name.find('_');
    if (pos != std::string::npos) {
        auto it = tables.find(name.substr(pos + 1));
        if (it != tables.end()) {
            std::string kind = name.substr(0, pos);
            if (kind == "c") return from_function_algebra(it->second(), name);
            if (kind == "grp") return from_group_algebra(it->second(), name);
        }
    }
    throw StructuralError("unknown builtin instance: " + name);
}

}  // namespace qglab

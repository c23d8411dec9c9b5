#include "qglab/convolution.hpp"

#include "qglab/errors.hpp"

namespace qglab {

Functional functional(const QG& g, const Vec& values) {
    if (values.size() != g->dim()) throw StructuralError("functional has wrong length");
    return {g, values};
}

Functional basis_functional(const QG& g, int i) { return {g, g->basis(i)}; }
Functional counit_functional(const QG& g) { return {g, g->data().counit}; }
Functional haar_functional(const QG& g) { return {g, g->data().haar}; }

cd pairing(const AlgebraElement& x, const Functional& w) {
    if (x.owner != w.owner) throw OwnerMismatch();
    return x.coeffs.cwiseProduct(w.coeffs).sum();
}

Functional convolve(const Functional& a, const Functional& b) {
    if (a.owner != b.owner) throw OwnerMismatch();
    const auto& d = a.owner->data();
    const int n = d.dim;
    Vec out(n);
    for (int i = 0; i < n; ++i) out(i) = (a.coeffs.transpose() * d.coproduct.slice(i) * b.coeffs)(0, 0);
    return {a.owner, out};
}

Functional star_l1(const Functional& w) { return {w.owner, (w.owner->data().star * w.coeffs).conjugate()}; }

Functional sharp(const Functional& w) {
    const auto& d = w.owner->data();
    return {w.owner, d.antipode * d.star.conjugate() * w.coeffs.conjugate()};
}

std::vector<Mat> trace_pairing_blocks(const Functional& w) {
    const auto& bd = w.owner->blocks();
    // omega(x) = w^T a with a = B f, so the flat pairing vector is B^T w.
    Vec gflat = bd.backward_matrix.transpose() * w.coeffs;
    std::vector<Mat> parts = bd.unflatten(gflat);
    for (auto& p : parts) p.transposeInPlace();
    return parts;
}

L1Norm norm_l1_with_witness(const Functional& w) {
    const auto& bd = w.owner->blocks();
    auto parts = trace_pairing_blocks(w);
    L1Norm out;
    std::vector<Mat> wit;
    for (const auto& p : parts) {
        Eigen::JacobiSVD<Mat> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.value += svd.singularValues().sum();
        wit.push_back(svd.matrixV() * svd.matrixU().adjoint());
    }
    out.witness = {w.owner, bd.backward(wit)};
    return out;
}

double norm_l1(const Functional& w) { return norm_l1_with_witness(w).value; }

}  // namespace qglab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qglab/convolution.hpp"
#include "qglab/errors.hpp"

using namespace qglab;

namespace {

Functional random_functional(const QG& g, Rng& rng) { return functional(g, rng.cvec(g->dim())); }

double dist(const Functional& a, const Functional& b) { return max_abs(Vec(a.coeffs - b.coeffs)); }

}  // namespace

TEST_CASE("convolution on L1(C(Z2)) is the group algebra of Z2") {
    auto g = builtin("c_z2");
    auto we = basis_functional(g, 0);
    auto wg = basis_functional(g, 1);
    CHECK(dist(convolve(wg, wg), we) < 1e-15);
    CHECK(dist(convolve(we, wg), wg) < 1e-15);
}

TEST_CASE("counit is a two-sided convolution unit") {
    Rng rng(3);
    for (const auto& name : builtin_names()) {
        auto g = builtin(name);
        auto eps = counit_functional(g);
        for (int t = 0; t < 5; ++t) {
            auto w = random_functional(g, rng);
            CHECK(dist(convolve(eps, w), w) < 1e-12);
            CHECK(dist(convolve(w, eps), w) < 1e-12);
        }
    }
}

TEST_CASE("convolution on L1(C[Z2]) is pointwise in the group-like basis") {
    auto g = builtin("grp_z2");
    Rng rng(5);
    auto a = random_functional(g, rng);
    auto b = random_functional(g, rng);
    // omega(lambda_x) is the Fourier coefficient at x; group-likes multiply them pointwise.
    Vec expected = a.coeffs.cwiseProduct(b.coeffs);
    CHECK(max_abs(Vec(convolve(a, b).coeffs - expected)) < 1e-14);
}

TEST_CASE("convolution is associative") {
    Rng rng(7);
    for (const auto& name : builtin_names()) {
        auto g = builtin(name);
        auto a = random_functional(g, rng), b = random_functional(g, rng), c = random_functional(g, rng);
        CHECK(dist(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) < 1e-11);
    }
}

TEST_CASE("L1 involution") {
    auto g = builtin("c_z2");
    Vec real(2);
    real << 0.3, -1.7;
    CHECK(dist(star_l1(functional(g, real)), functional(g, real)) < 1e-15);

    Rng rng(11);
    for (const auto& name : builtin_names()) {
        auto h = builtin(name);
        auto w = random_functional(h, rng);
        auto iw = functional(h, cd(0, 1) * w.coeffs);
        CHECK(max_abs(Vec(star_l1(iw).coeffs - cd(0, -1) * star_l1(w).coeffs)) < 1e-14);
        CHECK(dist(star_l1(star_l1(w)), w) < 1e-12);
        auto v = random_functional(h, rng);
        CHECK(dist(star_l1(convolve(w, v)), convolve(star_l1(w), star_l1(v))) < 1e-11);
    }
}

TEST_CASE("sharp involution") {
    auto g = builtin("c_z2");
    auto wg = basis_functional(g, 1);
    CHECK(dist(sharp(wg), wg) < 1e-15);

    Rng rng(13);
    for (const auto& name : builtin_names()) {
        auto h = builtin(name);
        auto a = random_functional(h, rng);
        auto b = random_functional(h, rng);
        CHECK(dist(sharp(sharp(a)), a) < 1e-12);
        // Oracle: <x, omega#> = conj <S(x)*, omega> evaluated on each basis element.
        auto lhs = sharp(convolve(a, b));
        auto rhs = convolve(sharp(b), sharp(a));
        auto ab = convolve(a, b);
        for (int i = 0; i < h->dim(); ++i) {
            Vec sx = h->star(h->antipode(h->basis(i)));
            cd direct = std::conj(sx.cwiseProduct(ab.coeffs).sum());
            CHECK(std::abs(lhs.coeffs(i) - direct) < 1e-11);
            CHECK(std::abs(rhs.coeffs(i) - direct) < 1e-11);
        }
    }
}

TEST_CASE("L1 norm examples") {
    auto g = builtin("c_z2");
    CHECK(norm_l1(counit_functional(g)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm_l1(haar_functional(g)) == doctest::Approx(1.0).epsilon(1e-12));
    Vec d(2);
    d << 1.0, -1.0;
    auto w = functional(g, d);
    // Oracle: sup over the extreme points of the unit ball of C(Z2).
    double best = 0.0;
    for (double s0 : {-1.0, 1.0})
        for (double s1 : {-1.0, 1.0}) best = std::max(best, std::abs(s0 * d(0) + s1 * d(1)));
    CHECK(norm_l1(w) == doctest::Approx(best).epsilon(1e-12));
    CHECK(best == 2.0);
}

TEST_CASE("L1 norm on commutative instances is the l1 norm of point values") {
    Rng rng(17);
    for (const char* name : {"c_z3", "c_z2xz2", "c_s3"}) {
        auto g = builtin(name);
        auto w = random_functional(g, rng);
        CHECK(norm_l1(w) == doctest::Approx(w.coeffs.cwiseAbs().sum()).epsilon(1e-10));
    }
}

TEST_CASE("states have norm one on every instance") {
    for (const auto& name : builtin_names()) {
        auto g = builtin(name);
        CHECK(norm_l1(counit_functional(g)) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(norm_l1(haar_functional(g)) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("L1 norm properties") {
    Rng rng(19);
    for (const auto& name : builtin_names()) {
        auto g = builtin(name);
        for (int t = 0; t < 10; ++t) {
            auto a = random_functional(g, rng);
            auto b = random_functional(g, rng);
            CHECK(norm_l1(convolve(a, b)) <= norm_l1(a) * norm_l1(b) + 1e-8);
            CHECK(norm_l1(sharp(a)) == doctest::Approx(norm_l1(a)).epsilon(1e-9));

            auto x = element(g, rng.cvec(g->dim()));
            CHECK(std::abs(pairing(x, a)) <= norm_l1(a) * operator_norm(x) + 1e-8);

            auto nw = norm_l1_with_witness(a);
            CHECK(operator_norm(nw.witness) <= 1.0 + 1e-9);
            CHECK(std::abs(pairing(nw.witness, a) - nw.value) < 1e-6);
        }
    }
}

TEST_CASE("sharp is dual to the adjoint of the antipode") {
    Rng rng(23);
    for (const auto& name : builtin_names()) {
        auto g = builtin(name);
        auto x = element(g, rng.cvec(g->dim()));
        // Solve <x, omega#> = conj <y, omega> over basis functionals.
        Vec y(g->dim());
        for (int k = 0; k < g->dim(); ++k) y(k) = std::conj(pairing(x, sharp(basis_functional(g, k))));
        CHECK(max_abs(Vec(y - adjoint(apply_antipode(x)).coeffs)) < 1e-10);
    }
}

TEST_CASE("functionals from different groups do not mix") {
    auto a = counit_functional(builtin("c_z2"));
    auto b = counit_functional(builtin("c_z2"));
    CHECK_THROWS_AS(convolve(a, b), OwnerMismatch);
    CHECK_THROWS_AS(functional(builtin("c_z2"), Vec::Zero(3)), StructuralError);
}

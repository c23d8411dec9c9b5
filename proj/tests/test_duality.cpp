#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qglab/duality.hpp"
#include "qglab/errors.hpp"

using namespace qglab;

namespace {

Functional random_functional(const QG& g, Rng& rng) { return functional(g, rng.cvec(g->dim())); }

double mat_dist(const Mat& a, const Mat& b) { return max_abs(Mat(a - b)); }

}  // namespace

TEST_CASE("W for C(Z2) is the translation permutation") {
    auto g = builtin("c_z2");
    auto w = build_w(g);
    // W^*(e_x (x) e_y) = e_x (x) e_{x^{-1} y}; in Z2 that is y -> x + y.
    Mat expected = Mat::Zero(4, 4);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) expected(x * 2 + (x ^ y), x * 2 + y) = 1.0;
    CHECK(mat_dist(w.w.adjoint(), expected) < 1e-14);
    CHECK(pentagon_residual(w.w, 2) < 1e-12);
}

TEST_CASE("multiplicative unitary invariants on every instance") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto g = builtin(name);
        auto w = build_w(g);
        CHECK(w.unitarity_residual < 1e-12);
        CHECK(w.slice_residual < 1e-10);
        CHECK(pentagon_residual(w.w, g->dim()) < 1e-9);
        CHECK(coproduct_residual(g, w.w) < 1e-9);
    }
}

TEST_CASE("left regular representation") {
    Rng rng(3);
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto g = builtin(name);
        auto w = build_w(g);
        const int n = g->dim();
        CHECK(mat_dist(lambda_rep(w, counit_functional(g)), Mat::Identity(n, n)) < 1e-12);
        for (int t = 0; t < 5; ++t) {
            auto a = random_functional(g, rng), b = random_functional(g, rng);
            CHECK(mat_dist(lambda_rep(w, convolve(a, b)), lambda_rep(w, a) * lambda_rep(w, b)) < 1e-10);
            CHECK(mat_dist(lambda_rep(w, sharp(a)), lambda_rep(w, a).adjoint()) < 1e-10);
            CHECK(spectral_norm(lambda_rep(w, a)) <= norm_l1(a) + 1e-9);
        }
        // injective
        Mat stack(n * n, n);
        for (int k = 0; k < n; ++k) stack.col(k) = vec(w.slices[k]);
        CHECK(min_singular_value(stack) > 1e-6);
    }
    auto g = builtin("c_z2");
    Mat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(mat_dist(lambda_rep(build_w(g), basis_functional(g, 1)), swap) < 1e-14);
}

TEST_CASE("duals validate and swap commutativity") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto g = builtin(name);
        auto dq = build_dual(g);
        auto rep = validate(*dq->dual, 1e-9);
        CHECK(rep.pass);
        CHECK(rep.violation("haar_left_invariance") < 1e-9);
        CHECK(dq->dual->is_commutative() == g->is_cocommutative());
        CHECK(dq->dual->is_cocommutative() == g->is_commutative());
    }
}

TEST_CASE("dual of C(Z2) is C[Z2]") {
    auto dq = build_dual(builtin("c_z2"));
    auto grp = builtin("grp_z2");
    const auto& a = dq->dual->data();
    const auto& b = grp->data();
    for (size_t k = 0; k < a.mult.v.size(); ++k) {
        CHECK(std::abs(a.mult.v[k] - b.mult.v[k]) < 1e-12);
        CHECK(std::abs(a.coproduct.v[k] - b.coproduct.v[k]) < 1e-12);
    }
}

TEST_CASE("dual block patterns") {
    CHECK(build_dual(builtin("c_s3"))->dual->blocks().sizes() == std::vector<int>{1, 1, 2});
    auto kp = builtin("kac_paljutkin");
    CHECK(build_dual(kp)->dual->blocks().sizes() == kp->blocks().sizes());
}

TEST_CASE("dual GNS map pairs with the primal one") {
    Rng rng(5);
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto g = builtin(name);
        auto dq = build_dual(g);
        const auto& gd = g->gns();
        auto x = element(g, rng.cvec(g->dim()));
        auto w = random_functional(g, rng);
        cd lhs = pairing(adjoint(x), w);
        cd rhs = gd.lambda(x.coeffs).dot(lambda_hat_vector(*dq, w));
        CHECK(std::abs(lhs - rhs) < 1e-10);
        // J-hat is an antiunitary involution.
        Vec v = rng.cvec(g->dim());
        CHECK(max_abs(Vec(dq->j_hat * (dq->j_hat * v.conjugate()).conjugate() - v)) < 1e-10);
    }
}

TEST_CASE("biduality") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto rep = biduality(builtin(name));
        CHECK(rep.pass);
        CHECK(rep.blocks_match);
        CHECK(rep.violation <= (name == "c_z2" ? 1e-9 : 1e-8));
    }
}

TEST_CASE("regularity of W") {
    for (const auto& name : builtin_names()) {
        auto g = builtin(name);
        auto ranks = regularity_ranks(*build_dual(g));
        CHECK(ranks.first == g->dim());
        CHECK(ranks.second == g->dim());
    }
}

TEST_CASE("multiplier from the Z2 character") {
    auto g = builtin("c_z2");
    auto dq = build_dual(g);
    Vec u(2);
    u << 1.0, -1.0;
    auto v = make_corep(g, 1, {u});
    Vec one = Vec::Ones(1);
    auto m = multiplier_from_coefficient(*dq, v, one, one);
    CHECK(m.residual < 1e-12);
    CHECK(m.w_residual < 1e-12);
    // L^* multiplies lambda(omega_e) by +1 and lambda(omega_g) by -1.
    CHECK(max_abs(Vec(m.lstar * vec(dq->w.slices[0]) - vec(dq->w.slices[0]))) < 1e-12);
    CHECK(max_abs(Vec(m.lstar * vec(dq->w.slices[1]) + vec(dq->w.slices[1]))) < 1e-12);
    CHECK(m.norm_bound == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("multipliers from coefficients") {
    Rng rng(7);
    for (auto [name, d] : std::vector<std::pair<std::string, int>>{{"c_s3", 3}, {"grp_s3", 2}, {"kac_paljutkin", 2}, {"grp_z4", 2}}) {
        CAPTURE(name);
        auto g = builtin(name);
        auto dq = build_dual(g);

        auto unitary = unitary_corep(g, d);
        Vec a = rng.cvec(d).normalized();
        auto mu = multiplier_from_coefficient(*dq, unitary, a, a);
        CHECK(mu.residual < 1e-9);
        CHECK(mu.norm_bound <= 1.0 + 1e-9);

        for (int t = 0; t < 5; ++t) {
            auto v = random_invertible_corep(g, d, rng.next_seed());
            Vec alpha = rng.cvec(d), beta = rng.cvec(d);
            auto m = multiplier_from_coefficient(*dq, v, alpha, beta);
            CHECK(m.residual < 1e-8);
            CHECK(m.w_residual < 1e-8);
            CHECK(m.norm_bound <= m.cor_bound + 1e-6);
            CHECK(m.lower_bound <= m.norm_bound + 1e-8);

            Mat frame = rng.unitary(d);
            auto mf = multiplier_from_coefficient(*dq, v, alpha, beta, &frame);
            CHECK(mat_dist(mf.lstar, m.lstar) < 1e-9);
        }
    }
}

TEST_CASE("pairing identity") {
    Rng rng(9);
    {
        auto g = builtin("c_z2");
        auto dq = build_dual(g);
        CHECK(pairing_identity_check(*dq, unit_element(g), counit_functional(g), counit_functional(g)) < 1e-14);
        Vec u(2);
        u << 1.0, -1.0;
        for (int t = 0; t < 10; ++t)
            CHECK(pairing_identity_check(*dq, element(g, u), random_functional(g, rng), random_functional(g, rng)) < 1e-10);
    }
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto g = builtin(name);
        auto dq = build_dual(g);
        for (int t = 0; t < 10; ++t) {
            auto x = element(g, rng.cvec(g->dim()));
            CHECK(pairing_identity_check(*dq, x, random_functional(g, rng), random_functional(g, rng)) < 1e-8);
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qglab/errors.hpp"
#include "qglab/free_fock.hpp"

using namespace qglab;

namespace {

Mat z2_symmetry() {
    Vec c(2);
    c << 1.0, -1.0;
    return factor_element(builtin("c_z2"), c);
}

std::vector<FreeFactor> z2_copies(int n) { return std::vector<FreeFactor>(n, group_factor(builtin("c_z2"))); }

Mat centred_m2(Rng& rng) {
    Mat a = rng.cmat(2, 2);
    a -= a.trace() / 2.0 * Mat::Identity(2, 2);
    return a;
}

}  // namespace

TEST_CASE("Fock dimensions") {
    CHECK(FockSpace(z2_copies(2), 3).dim() == 7);
    for (int n : {1, 4, 16}) CHECK(FockSpace(z2_copies(n), 1).dim() == 1 + n);
    CHECK(FockSpace({matrix_factor(2), matrix_factor(2)}, 2).dim() == 25);
    FockSpace f(z2_copies(3), 3);
    CHECK(f.count_up_to(0) == 1);
    CHECK(f.count_up_to(1) == 4);
    CHECK(f.count_up_to(2) == 10);
    CHECK(f.dim() == 22);
    CHECK_THROWS_AS(FockSpace(z2_copies(16), 12, 200000), BudgetError);
}

TEST_CASE("factor GNS data") {
    auto m2 = matrix_factor(2);
    Mat a(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    CHECK(std::abs(m2.state(matrix_element(a)) - cd(2.5)) < 1e-14);
    CHECK(max_abs(Mat(m2.centred_basis.adjoint() * m2.xi)) < 1e-14);
    auto z2 = group_factor(builtin("c_z2"));
    CHECK(std::abs(z2.state(z2_symmetry())) < 1e-14);
    CHECK(std::abs(z2.state(Mat::Identity(2, 2)) - cd(1.0)) < 1e-14);
}

TEST_CASE("symmetries u_i on the Fock space") {
    FockSpace f(z2_copies(2), 3);
    auto u1 = free_action(f, 0, z2_symmetry());
    auto u2 = free_action(f, 1, z2_symmetry());
    Vec w1 = u1.op * vacuum(f);
    CHECK(w1.norm() == doctest::Approx(1.0));
    int s1 = f.prepend(0, 0, 0);
    CHECK(std::abs(w1(s1)) == doctest::Approx(1.0));
    CHECK(f.word(f.prepend(s1, 1, 0)) == "(1,0) (0,0)");
    // u_i^2 = 1 and u_i^* = u_i on words that stay inside the truncation.
    int exact = f.count_up_to(f.max_len() - 1);
    Mat sq = Mat(u1.op * u1.op).topLeftCorner(exact, exact);
    CHECK(max_abs(Mat(sq - Mat::Identity(exact, exact))) < 1e-14);
    CHECK(max_abs(Mat(Mat(u2.op) - Mat(u2.op.adjoint()))) < 1e-14);
}

TEST_CASE("fourth moment of u_1 + u_2") {
    FockSpace f(z2_copies(2), 4);
    auto u1 = free_action(f, 0, z2_symmetry());
    auto u2 = free_action(f, 1, z2_symmetry());
    SpMat s = u1.op + u2.op;
    Vec v = vacuum(f);
    for (int t = 0; t < 4; ++t) v = s * v;
    CHECK(std::abs(v(0) - cd(6.0)) < 1e-12);
    auto vs = vacuum_state(f, {&u1, &u2, &u2, &u1});
    CHECK(vs.exact);
    CHECK(std::abs(vs.value - cd(1.0)) < 1e-14);
    CHECK_FALSE(vacuum_state(f, {&u1, &u2, &u1, &u2, &u1}).exact);
}

TEST_CASE("freeness of the vacuum state") {
    Rng rng(21);
    FockSpace f({matrix_factor(2), matrix_factor(2), group_factor(builtin("kac_paljutkin"))}, 4);
    for (int t = 0; t < 5; ++t) {
        // Alternating centred words have zero expectation.
        auto a = free_action(f, 0, matrix_element(centred_m2(rng)));
        auto b = free_action(f, 1, matrix_element(centred_m2(rng)));
        auto c = free_action(f, 0, matrix_element(centred_m2(rng)));
        Vec coeffs = rng.cvec(8);
        auto g = builtin("kac_paljutkin");
        Mat kp = factor_element(g, coeffs);
        kp -= f.factor(2).state(kp) * Mat::Identity(8, 8);
        auto d = free_action(f, 2, kp);
        CHECK(std::abs(vacuum_state(f, {&a, &b, &c, &d}).value) < 1e-12);
        CHECK(std::abs(vacuum_state(f, {&d, &a, &d}).value) < 1e-12);

        // phi(x y x') = phi(x x') phi(y) for x, x' in one factor and y in another.
        Mat x = rng.cmat(2, 2), y = rng.cmat(2, 2), x2 = rng.cmat(2, 2);
        auto ox = free_action(f, 0, matrix_element(x));
        auto oy = free_action(f, 1, matrix_element(y));
        auto ox2 = free_action(f, 0, matrix_element(x2));
        cd lhs = vacuum_state(f, {&ox, &oy, &ox2}).value;
        cd rhs = (x * x2).trace() / 2.0 * y.trace() / 2.0;
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("column of symmetries has norm sqrt(N)") {
    for (int n : {4, 9, 16}) {
        CAPTURE(n);
        FockSpace f(z2_copies(n), 3);
        AmplifiedOperator x;
        x.k = n + 1;
        for (int i = 0; i < n; ++i) {
            Mat a = Mat::Zero(n + 1, n + 1);
            a(i + 1, 0) = 1.0;
            x.add(a, free_action(f, i, z2_symmetry()).op);
        }
        auto r = compression_norm(f, x, 2);
        CHECK(std::abs(r.value - std::sqrt(double(n))) < 1e-10 * std::sqrt(double(n)));
    }
}

TEST_CASE("sum of four free symmetries") {
    FockSpace f(z2_copies(4), 6);
    AmplifiedOperator x;
    for (int i = 0; i < 4; ++i) x.add(Mat::Ones(1, 1), free_action(f, i, z2_symmetry()).op);
    auto seq = compression_norm_sequence(f, x, 5);
    REQUIRE(seq.size() == 6);
    CHECK(seq[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(seq[1] == doctest::Approx(std::sqrt(7.0)).epsilon(1e-8));
    for (size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] >= seq[i - 1] - 1e-12);
    CHECK(seq[5] >= 3.2);
    CHECK(seq[5] <= 2.0 * std::sqrt(3.0) + 1e-12);
    // Dense eigenvalue oracle at domain length 5.
    int dd = f.count_up_to(5);
    Mat dense = Mat::Zero(f.dim(), dd);
    for (const auto& op : x.ops) dense += Mat(op).leftCols(dd);
    CHECK(seq[5] == doctest::Approx(spectral_norm(dense)).epsilon(1e-7));
    CHECK_THROWS_AS(compression_norm(f, x, 6), StructuralError);
}

TEST_CASE("amplified compression against a dense oracle") {
    Rng rng(29);
    FockSpace f({matrix_factor(2), matrix_factor(2), group_factor(builtin("c_z3"))}, 3);
    AmplifiedOperator x;
    x.k = 3;
    Mat dense = Mat::Zero(3 * f.dim(), 3 * f.dim());
    for (int i = 0; i < 3; ++i) {
        Mat a = rng.cmat(3, 3);
        Mat el = i < 2 ? matrix_element(rng.cmat(2, 2)) : Mat(rng.cmat(3, 3));
        auto op = free_action(f, i, el);
        x.add(a, op.op);
        dense += kron(a, Mat(op.op));
    }
    Mat y = rng.cmat(f.dim(), 3);
    Mat ref = unvec(Vec(dense * vec(y)), f.dim(), 3);
    CHECK(max_abs(Mat(x.apply(y) - ref)) < 1e-12);
    Mat refa = unvec(Vec(dense.adjoint() * vec(y)), f.dim(), 3);
    CHECK(max_abs(Mat(x.apply_adjoint(y) - refa)) < 1e-12);

    const int dd = f.count_up_to(2);
    Mat cols(3 * f.dim(), 3 * dd);
    for (int c = 0; c < 3; ++c) cols.middleCols(c * dd, dd) = dense.middleCols(c * f.dim(), dd);
    auto r = compression_norm(f, x, 2);
    CHECK(r.value == doctest::Approx(spectral_norm(cols)).epsilon(1e-7));
}

TEST_CASE("operator-valued Khintchine inequality") {
    Rng rng(31);
    auto run = [&](std::vector<FreeFactor> factors, int len, bool matrix) {
        FockSpace f(factors, len);
        std::vector<KhintchineTerm> terms;
        for (int i = 0; i < f.num_factors(); ++i) {
            Mat x = matrix ? matrix_element(centred_m2(rng)) : Mat(rng.cnormal() * z2_symmetry());
            terms.push_back({i, rng.cmat(2, 2), x});
        }
        auto rep = khintchine_check(f, terms);
        CHECK(rep.upper_ok);
        CHECK(rep.lhs_cert <= 3.0 * rep.rhs_max + 1e-8);
        CHECK(rep.lhs_cert >= rep.row - 1e-8);
        CHECK(rep.ratio <= 3.0);
        return rep;
    };
    for (int n : {2, 4, 6}) run(std::vector<FreeFactor>(n, matrix_factor(2)), 4, true);
    for (int n : {4, 16}) run(z2_copies(n), 4, false);

    FockSpace f(z2_copies(2), 2);
    CHECK_THROWS_AS(khintchine_check(f, {{0, Mat::Identity(1, 1), Mat::Identity(2, 2)}}), InvalidInstance);
    CHECK_THROWS_AS(khintchine_check(f, {{0, Mat::Identity(1, 1), z2_symmetry()}, {0, Mat::Identity(1, 1), z2_symmetry()}}),
                    StructuralError);
}

TEST_CASE("norm equivalence on coefficient spaces") {
    auto g = builtin("c_z2");
    Vec u(2);
    u << 1.0, -1.0;
    auto ch = make_corep(g, 1, {u});
    auto c = coefficient_constants(ch);
    CHECK(c.first == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.second == doctest::Approx(1.0).epsilon(1e-12));
    auto rep = norm_equivalence(ch, 5, 3, 4, 11);
    CHECK(rep.bound == doctest::Approx(3.0));
    CHECK(rep.max_ratio <= rep.bound + 1e-8);
    CHECK(rep.min_ratio >= 1.0 - 1e-9);

    auto kp = builtin("kac_paljutkin");
    Corepresentation two;
    for (const auto& v : unitary_irreducibles(kp))
        if (v.d == 2) two = v;
    REQUIRE(two.d == 2);
    auto r2 = norm_equivalence(two, 3, 3, 3, 13);
    CHECK(r2.c2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r2.c1 >= 1.0 - 1e-9);
    CHECK(r2.max_ratio <= r2.bound + 1e-8);
    CHECK(r2.max_lower_violation <= 1e-9);
}

TEST_CASE("representation that is bounded but not completely bounded") {
    Rng rng(41);
    Vec p = rng.cvec(3), q = rng.cvec(3);
    CHECK(max_abs(Mat(theta_map(p.cwiseProduct(q)) - theta_map(p) * theta_map(q))) < 1e-12);

    double prev_cb = 0.0;
    for (int n : {1, 4, 16}) {
        CAPTURE(n);
        auto rep = build_noncb_rep(n, 3);
        const auto& f = *rep.fock;
        // Group-like generators: convolution of vector functionals is pointwise on the u_i.
        Vec z1 = rng.cvec(f.dim()), e1 = rng.cvec(f.dim()), z2 = rng.cvec(f.dim()), e2 = rng.cvec(f.dim());
        Vec p1 = phi_map(rep, z1, e1), p2 = phi_map(rep, z2, e2);
        CHECK(max_abs(Mat(theta_map(p1.cwiseProduct(p2)) - pi_rep(rep, z1, e1) * pi_rep(rep, z2, e2))) < 1e-10 * (1.0 + p1.norm() * p2.norm()));

        auto probe = cb_vs_bounded_probe(rep, 3, 7);
        CHECK(probe.cb_lower >= probe.analytic_floor - 1e-9);
        CHECK(probe.pi_search <= probe.bounded_upper);
        CHECK(probe.pi_search > 0.0);
        CHECK(probe.multiplier_norm == doctest::Approx(std::sqrt(double(n))).epsilon(1e-12));
        CHECK(probe.phi_star_lower >= 1.0 - 1e-9);
        CHECK(probe.cb_lower >= prev_cb);
        prev_cb = probe.cb_lower;
    }
    CHECK(prev_cb >= 3.0);
}

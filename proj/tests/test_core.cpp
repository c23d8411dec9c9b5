#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qglab/errors.hpp"
#include "qglab/instance_io.hpp"
#include "qglab/quantum_group.hpp"

using namespace qglab;

namespace {

QuantumGroupData cz2_by_hand() {
    QuantumGroupData d;
    d.name = "hand_c_z2";
    d.dim = 2;
    d.basis_labels = {"delta_e", "delta_g"};
    d.mult = Tensor3(2);
    d.mult(0, 0, 0) = 1.0;
    d.mult(1, 1, 1) = 1.0;
    d.coproduct = Tensor3(2);
    d.coproduct(0, 0, 0) = 1.0;
    d.coproduct(0, 1, 1) = 1.0;
    d.coproduct(1, 0, 1) = 1.0;
    d.coproduct(1, 1, 0) = 1.0;
    d.unit = Vec::Ones(2);
    d.counit = Vec::Zero(2);
    d.counit(0) = 1.0;
    d.antipode = Mat::Identity(2, 2);
    d.star = Mat::Identity(2, 2);
    d.haar = Vec::Constant(2, 0.5);
    return d;
}

Vec v2(cd a, cd b) {
    Vec v(2);
    v << a, b;
    return v;
}

}  // namespace

TEST_CASE("hand-written C(Z2) validates") {
    auto rep = validate(FiniteQuantumGroup(cz2_by_hand()));
    CHECK(rep.pass);
    CHECK(rep.max_violation < 1e-14);
}

TEST_CASE("delta_e evaluation is not an invariant state") {
    auto d = cz2_by_hand();
    d.haar = v2(1.0, 0.0);
    auto rep = validate(FiniteQuantumGroup(d));
    CHECK_FALSE(rep.pass);
    CHECK(rep.violation("haar_left_invariance") == doctest::Approx(1.0));
}

TEST_CASE("dimension mismatch is a structural error") {
    auto d = cz2_by_hand();
    d.haar = Vec::Ones(3);
    CHECK_THROWS_AS(make_group(d), StructuralError);
}

TEST_CASE("non-involutive antipode is rejected") {
    QG g = builtin("grp_z3");
    auto d = g->data();
    // generator-independent perturbation: S = identity on C[Z3] breaks the antipode law
    d.antipode = Mat::Identity(3, 3);
    CHECK_FALSE(validate(FiniteQuantumGroup(d)).pass);
}

TEST_CASE("every builtin validates at 1e-10") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        auto rep = validate(*builtin(name), 1e-10);
        CHECK(rep.pass);
        CHECK(rep.max_violation <= 1e-10);
    }
}

TEST_CASE("C(Z2) element arithmetic") {
    QG g = builtin("c_z2");
    auto de = basis_element(g, 0);
    auto dg = basis_element(g, 1);
    auto u = element(g, v2(1.0, -1.0));
    CHECK(max_abs(multiply(de, dg).coeffs) == 0.0);
    CHECK(max_abs(Vec(multiply(u, u).coeffs - g->data().unit)) < 1e-15);
    CHECK(std::abs(apply_haar(u)) < 1e-15);
    CHECK(operator_norm(u) == doctest::Approx(1.0));
    CHECK(operator_norm(unit_element(g)) == doctest::Approx(1.0));
    CHECK(operator_norm(element(g, v2(1.0, 2.0))) == doctest::Approx(2.0));
    // apply_coproduct index j*n + k
    Vec c = apply_coproduct(dg);
    CHECK(c(1) == cd(1.0));
    CHECK(c(2) == cd(1.0));
    CHECK(c(0) == cd(0.0));
}

TEST_CASE("owner mismatch") {
    auto a = basis_element(builtin("c_z2"), 0);
    auto b = basis_element(builtin("c_z2"), 0);
    CHECK_THROWS_AS(multiply(a, b), OwnerMismatch);
}

TEST_CASE("GNS of C(Z2) and C[Z2]") {
    QG f = builtin("c_z2");
    const auto& gf = gns(f);
    CHECK(gf.gns_dim == 2);
    for (const auto& l : gf.left_basis) CHECK(max_abs(Mat(l - Mat(l.diagonal().asDiagonal()))) < 1e-14);

    QG c = builtin("grp_z2");
    const auto& gc = gns(c);
    Mat swap(2, 2);
    swap << 0, 1, 1, 0;
    CHECK(max_abs(Mat(gc.left_basis[1] - swap)) < 1e-14);
    CHECK(max_abs(Mat(gc.left_basis[0] - Mat::Identity(2, 2))) < 1e-14);
}

TEST_CASE("GNS invariants on every builtin") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        QG g = builtin(name);
        const auto& gd = gns(g);
        const int n = g->dim();
        Rng rng(7);
        for (int t = 0; t < 5; ++t) {
            Vec x = rng.cvec(n), y = rng.cvec(n);
            // (Lambda(x)|Lambda(y)) = h(y* x)
            cd ip = gd.lambda(y).dot(gd.lambda(x));
            CHECK(std::abs(ip - g->haar(g->mul(g->star(y), x))) < 1e-10);
            // *-homomorphism
            CHECK(max_abs(Mat(gd.left_action(g->star(x)) - gd.left_action(x).adjoint())) < 1e-10);
            CHECK(max_abs(Mat(gd.left_action(g->mul(x, y)) - gd.left_action(x) * gd.left_action(y))) < 1e-10);
            // J Lambda(x) = Lambda(x*), J^2 = 1, J lambda(x) J = right multiplication by x*
            CHECK(max_abs(Vec(gd.apply_j(gd.lambda(x)) - gd.lambda(g->star(x)))) < 1e-10);
            CHECK(max_abs(Vec(gd.apply_j(gd.apply_j(gd.lambda(y))) - gd.lambda(y))) < 1e-10);
            Vec lhs = gd.apply_j(gd.left_action(x) * gd.apply_j(gd.lambda(y)));
            CHECK(max_abs(Vec(lhs - gd.lambda(g->mul(y, g->star(x))))) < 1e-10);
        }
        CHECK(max_abs(Mat(gd.modular_conj * gd.modular_conj.conjugate() - Mat::Identity(n, n))) < 1e-10);
    }
}

TEST_CASE("non-faithful Haar state is an invalid instance") {
    auto d = builtin("c_z3")->data();
    d.haar = Vec::Zero(3);
    d.haar(0) = 1.0;
    QG g = make_group(d);
    CHECK_THROWS_AS(g->gns(), InvalidInstance);
}

TEST_CASE("operator norm is a C*-norm") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        QG g = builtin(name);
        Rng rng(11);
        for (int t = 0; t < 5; ++t) {
            auto a = element(g, rng.cvec(g->dim()));
            auto b = element(g, rng.cvec(g->dim()));
            double na = operator_norm(a), nb = operator_norm(b);
            CHECK(operator_norm(multiply(a, b)) <= na * nb * (1 + 1e-8));
            CHECK(operator_norm(adjoint(a)) == doctest::Approx(na).epsilon(1e-8));
            CHECK(operator_norm(multiply(adjoint(a), a)) == doctest::Approx(na * na).epsilon(1e-8));
            CHECK(apply_haar(multiply(adjoint(a), a)).real() >= 0.0);
            CHECK(std::abs(apply_haar(multiply(adjoint(a), a)).imag()) < 1e-12);
            CHECK(std::abs(apply_haar(multiply(a, b)) - apply_haar(multiply(b, a))) < 1e-10);
            CHECK(max_abs(Vec(apply_antipode(apply_antipode(a)).coeffs - a.coeffs)) < 1e-12);
        }
        for (int i = 0; i < g->dim(); ++i) {
            Mat p = g->coproduct(g->basis(i));
            Vec lhs = p * g->data().haar;
            CHECK(max_abs(Vec(lhs - g->data().haar(i) * g->data().unit)) <= 1e-10);
        }
    }
}

TEST_CASE("block decomposition sizes") {
    CHECK(block_decompose(builtin("c_z2")).sizes() == std::vector<int>{1, 1});
    CHECK(block_decompose(builtin("grp_s3")).sizes() == std::vector<int>{1, 1, 2});
    CHECK(block_decompose(builtin("c_s3")).sizes() == std::vector<int>{1, 1, 1, 1, 1, 1});
    CHECK(block_decompose(builtin("kac_paljutkin")).sizes() == std::vector<int>{1, 1, 1, 1, 2});
}

TEST_CASE("block decomposition is a *-isomorphism") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        QG g = builtin(name);
        const auto& bd = block_decompose(g);
        int total = 0;
        for (int s : bd.sizes()) total += s * s;
        CHECK(total == g->dim());
        CHECK(max_abs(Mat(bd.forward_matrix * bd.backward_matrix - Mat::Identity(g->dim(), g->dim()))) < 1e-10);
        Rng rng(5);
        for (int t = 0; t < 10; ++t) {
            Vec a = rng.cvec(g->dim()), b = rng.cvec(g->dim());
            auto fa = bd.forward(a), fb = bd.forward(b), fab = bd.forward(g->mul(a, b));
            auto fas = bd.forward(g->star(a));
            for (size_t k = 0; k < fa.size(); ++k) {
                CHECK(max_abs(Mat(fab[k] - fa[k] * fb[k])) <= 1e-8);
                CHECK(max_abs(Mat(fas[k] - fa[k].adjoint())) <= 1e-8);
            }
            CHECK(max_abs(Vec(bd.backward(fa) - a)) < 1e-10);
        }
    }
}

TEST_CASE("block decomposition with other seeds agrees on sizes") {
    QG g = builtin("kac_paljutkin");
    for (std::uint64_t s : {1ULL, 2ULL, 99ULL}) CHECK(block_decompose(*g, s).sizes() == std::vector<int>{1, 1, 1, 1, 2});
}

TEST_CASE("builders: commutativity flags") {
    for (auto t : {cyclic_group(3), klein_group(), symmetric_group3()}) {
        QG f = from_function_algebra(t);
        QG c = from_group_algebra(t);
        CHECK(f->is_commutative());
        CHECK(c->is_cocommutative());
        CHECK(validate(*f).pass);
        CHECK(validate(*c).pass);
    }
    CHECK_FALSE(builtin("c_s3")->is_cocommutative());
    CHECK_FALSE(builtin("grp_s3")->is_commutative());
    QG kp = kac_paljutkin();
    CHECK_FALSE(kp->is_commutative());
    CHECK_FALSE(kp->is_cocommutative());
}

TEST_CASE("invalid group tables") {
    CHECK_THROWS_AS(from_function_algebra({{0, 1}, {1, 1}}), InvalidInstance);
    CHECK_THROWS_AS(from_group_algebra({{0, 1}, {1}}), InvalidInstance);
    CHECK_THROWS_AS(builtin("c_z5"), StructuralError);
}

TEST_CASE("S3 table matches composition of permutations") {
    auto t = symmetric_group3();
    CHECK(group_identity(t) == 0);
    int transpositions = 0;
    for (int a = 0; a < 6; ++a)
        if (t[a][a] == 0 && a != 0) ++transpositions;
    CHECK(transpositions == 3);
}

TEST_CASE("Kac-Paljutkin traciality by hand") {
    // h = (1/8)(x1+x2+x3+x4) + (1/4) tr on the M_2 block
    QG g = kac_paljutkin();
    Vec a = Vec::Zero(8), b = Vec::Zero(8);
    a(5) = 1.0;  // a12
    b(6) = 1.0;  // a21
    CHECK(std::abs(g->haar(g->mul(a, b)) - 0.25) < 1e-15);
    CHECK(std::abs(g->haar(g->mul(b, a)) - 0.25) < 1e-15);
}

TEST_CASE("instance json round trip is bit exact") {
    for (const auto& name : builtin_names()) {
        CAPTURE(name);
        QG g = builtin(name);
        const auto& d = g->data();
        auto j = instance_to_json(d);
        auto back = instance_from_json(nlohmann::json::parse(j.dump()));
        CHECK(instance_to_json(back).dump() == j.dump());
        CHECK(back.coproduct.v == d.coproduct.v);
    }
}

TEST_CASE("schema errors name the field") {
    auto j = nlohmann::json::parse(instance_to_json(builtin("c_z2")->data()).dump());
    j.erase("haar");
    try {
        instance_from_json(j);
        FAIL("expected schema error");
    } catch (const StructuralError& e) {
        CHECK(std::string(e.what()).find("haar") != std::string::npos);
    }
    j = nlohmann::json::parse(instance_to_json(builtin("c_z2")->data()).dump());
    j["unit"][0] = nlohmann::json::array({1.0});
    CHECK_THROWS_AS(instance_from_json(j), StructuralError);
}

TEST_CASE("truncated file is a schema error") {
    std::string path = "qglab_truncated_instance.json";
    {
        std::ofstream out(path);
        std::string text = instance_to_json(builtin("c_z2")->data()).dump();
        out << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_AS(load_instance(path), StructuralError);
    std::remove(path.c_str());
}

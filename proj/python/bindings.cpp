#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qglab/corep.hpp"
#include "qglab/duality.hpp"
#include "qglab/errors.hpp"
#include "qglab/free_fock.hpp"
#include "qglab/instance_io.hpp"
#include "qglab/suite.hpp"

namespace py = pybind11;
using namespace qglab;

namespace {

py::dict validation_dict(const ValidationReport& r) {
    py::dict checks;
    for (const auto& c : r.checks) checks[py::str(c.name)] = c.violation;
    py::dict out;
    out["pass"] = r.pass;
    out["tol"] = r.tol;
    out["max_violation"] = r.max_violation;
    out["checks"] = checks;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite quantum groups, corepresentations, duality and free products";

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<InvalidInstance>(m, "InvalidInstance", PyExc_ValueError);
    py::register_exception<NumericalDegeneracy>(m, "NumericalDegeneracy", PyExc_ArithmeticError);
    py::register_exception<NotInvertible>(m, "NotInvertible", PyExc_ArithmeticError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_MemoryError);

    py::class_<FiniteQuantumGroup, std::shared_ptr<FiniteQuantumGroup>>(m, "QuantumGroup")
        .def_property_readonly("name", &FiniteQuantumGroup::name)
        .def_property_readonly("dim", &FiniteQuantumGroup::dim)
        .def_property_readonly("labels", [](const FiniteQuantumGroup& g) { return g.data().basis_labels; })
        .def("mul", &FiniteQuantumGroup::mul, py::arg("a"), py::arg("b"))
        .def("star", &FiniteQuantumGroup::star)
        .def("antipode", &FiniteQuantumGroup::antipode)
        .def("counit", &FiniteQuantumGroup::counit)
        .def("haar", &FiniteQuantumGroup::haar)
        .def("coproduct", &FiniteQuantumGroup::coproduct, "n x n coefficient matrix of Delta(a)")
        .def("is_commutative", &FiniteQuantumGroup::is_commutative, py::arg("tol") = 1e-10)
        .def("is_cocommutative", &FiniteQuantumGroup::is_cocommutative, py::arg("tol") = 1e-10)
        .def("block_sizes", [](const FiniteQuantumGroup& g) { return g.blocks().sizes(); })
        .def("to_json", [](const FiniteQuantumGroup& g) { return instance_to_json(g.data()).dump(); })
        .def("__repr__", [](const FiniteQuantumGroup& g) {
            return "<QuantumGroup " + g.name() + " dim=" + std::to_string(g.dim()) + ">";
        });

    m.def("builtin_names", &builtin_names);
    m.def("builtin", [](const std::string& name) { return std::const_pointer_cast<FiniteQuantumGroup>(builtin(name)); });
    m.def("load_instance", [](const std::string& path) {
        return std::const_pointer_cast<FiniteQuantumGroup>(load_instance(path));
    });
    m.def("from_json", [](const std::string& text) {
        return std::const_pointer_cast<FiniteQuantumGroup>(make_group(instance_from_json(nlohmann::json::parse(text))));
    });
    m.def("validate", [](const std::shared_ptr<FiniteQuantumGroup>& g, double tol) { return validation_dict(validate(*g, tol)); },
          py::arg("group"), py::arg("tol") = 1e-10);

    py::class_<Corepresentation>(m, "Corepresentation")
        .def_readonly("d", &Corepresentation::d)
        .def("entry", [](const Corepresentation& v, int i, int j) { return v(i, j); })
        .def("gns_image", &gns_image);

    auto qg = [](const std::shared_ptr<FiniteQuantumGroup>& g) -> QG { return g; };
    m.def("unitary_irreducibles", [qg](const std::shared_ptr<FiniteQuantumGroup>& g) { return unitary_irreducibles(qg(g)); });
    m.def("unitary_corep", [qg](const std::shared_ptr<FiniteQuantumGroup>& g, int d) { return unitary_corep(qg(g), d); });
    m.def("random_invertible_corep",
          [qg](const std::shared_ptr<FiniteQuantumGroup>& g, int d, std::uint64_t seed, double max_cond) {
              return random_invertible_corep(qg(g), d, seed, max_cond);
          },
          py::arg("group"), py::arg("d"), py::arg("seed"), py::arg("max_cond") = 10.0);
    m.def("corep_violation", [](const Corepresentation& v) { return is_corep(v).violation; });
    m.def("isometry_residual", &isometry_residual);
    m.def("coisometry_residual", &coisometry_residual);
    m.def("cb_norm", &cb_norm);
    m.def("unitarize", [](const Corepresentation& v) {
        auto r = unitarize(v);
        py::dict out;
        out["t"] = r.t;
        out["unitary"] = r.unitary;
        out["epsilon"] = r.epsilon;
        out["min_eig"] = r.min_eig;
        return out;
    });

    m.def("dual", [qg](const std::shared_ptr<FiniteQuantumGroup>& g) {
        return std::const_pointer_cast<FiniteQuantumGroup>(build_dual(qg(g))->dual);
    });
    m.def("pentagon_residual", [qg](const std::shared_ptr<FiniteQuantumGroup>& g) {
        return pentagon_residual(build_w(qg(g)).w, g->dim());
    });
    m.def("multiplicative_unitary", [qg](const std::shared_ptr<FiniteQuantumGroup>& g) { return build_w(qg(g)).w; });
    m.def("biduality", [qg](const std::shared_ptr<FiniteQuantumGroup>& g, double tol) {
        auto r = biduality(qg(g), tol);
        py::dict out;
        out["map"] = r.map;
        out["violation"] = r.violation;
        out["blocks_match"] = r.blocks_match;
        out["pass"] = r.pass;
        return out;
    }, py::arg("group"), py::arg("tol") = 1e-8);

    m.def("fock_dim", [](int copies, const std::string& factor, int length) {
        FreeFactor f = factor == "m2" ? matrix_factor(2) : group_factor(builtin(factor));
        return FockSpace(std::vector<FreeFactor>(copies, f), length).dim();
    }, py::arg("copies"), py::arg("factor") = "c_z2", py::arg("length") = 3);
    m.def("free_symmetry_norms", [](int copies, int length) {
        auto g = builtin("c_z2");
        Vec c(2);
        c << 1.0, -1.0;
        FockSpace f(std::vector<FreeFactor>(copies, group_factor(g)), length);
        AmplifiedOperator x;
        for (int i = 0; i < copies; ++i) x.add(Mat::Ones(1, 1), free_action(f, i, factor_element(g, c)).op);
        return compression_norm_sequence(f, x, length - 1);
    }, "compressions of sum u_i to word lengths 0..length-1", py::arg("copies"), py::arg("length"));
    m.def("noncb_probe", [](int copies, int length, std::uint64_t seed) {
        auto rep = build_noncb_rep(copies, length);
        auto p = cb_vs_bounded_probe(rep, 4, seed);
        py::dict out;
        out["cb_lower"] = p.cb_lower;
        out["analytic_floor"] = p.analytic_floor;
        out["bounded_upper"] = p.bounded_upper;
        out["pi_search"] = p.pi_search;
        out["multiplier_norm"] = p.multiplier_norm;
        out["phi_star_lower"] = p.phi_star_lower;
        return out;
    }, py::arg("copies"), py::arg("length") = 3, py::arg("seed") = 1);

    m.def("run_suite_json",
          [](const std::string& suite, std::vector<std::string> builtins, std::vector<std::string> instances,
             std::uint64_t seed, int trials, int copies, int length, double tol, bool with_runtime) {
              SuiteConfig cfg;
              cfg.suite = suite;
              cfg.builtins = std::move(builtins);
              cfg.instances = std::move(instances);
              cfg.seed = seed;
              cfg.trials = trials;
              cfg.copies = copies;
              cfg.length = length;
              cfg.tol = tol;
              SuiteReport rep;
              {
                  py::gil_scoped_release release;
                  rep = run_suite(cfg);
              }
              return emit_report(rep, "json", with_runtime);
          },
          py::arg("suite") = "all", py::arg("builtins") = std::vector<std::string>{},
          py::arg("instances") = std::vector<std::string>{}, py::arg("seed") = 1, py::arg("trials") = 50,
          py::arg("copies") = 4, py::arg("length") = 4, py::arg("tol") = 0.0, py::arg("with_runtime") = true);
    m.def("export_corpus", &export_corpus, py::arg("directory"));
}

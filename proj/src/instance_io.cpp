#include "qglab/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qglab/errors.hpp"

namespace qglab {

using nlohmann::json;

namespace {

cd complex_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw StructuralError("field '" + field + "': complex numbers must be [re, im] pairs");
    double re = j[0].get<double>();
    double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) throw StructuralError("field '" + field + "': non-finite number");
    return {re, im};
}

const json& field(const json& j, const std::string& name) {
    if (!j.contains(name)) throw StructuralError("missing field '" + name + "'");
    return j.at(name);
}

void expect_array(const json& j, size_t len, const std::string& name) {
    if (!j.is_array() || j.size() != len)
        throw StructuralError("field '" + name + "' must be an array of length " + std::to_string(len));
}

Mat mat_from_json(const json& j, int n, const std::string& name) {
    expect_array(j, n, name);
    Mat m(n, n);
    for (int r = 0; r < n; ++r) {
        expect_array(j[r], n, name);
        for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(j[r][c], name);
    }
    return m;
}

Tensor3 tensor_from_json(const json& j, int n, const std::string& name) {
    expect_array(j, n, name);
    Tensor3 t(n);
    for (int a = 0; a < n; ++a) {
        expect_array(j[a], n, name);
        for (int b = 0; b < n; ++b) {
            expect_array(j[a][b], n, name);
            for (int c = 0; c < n; ++c) t(a, b, c) = complex_from_json(j[a][b][c], name);
        }
    }
    return t;
}

}  // namespace

using ojson = nlohmann::ordered_json;

ojson complex_to_json(cd z) { return ojson::array({z.real(), z.imag()}); }

ojson vec_to_json(const Vec& v) {
    ojson out = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

ojson mat_to_json(const Mat& m) {
    ojson out = ojson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        out.push_back(row);
    }
    return out;
}

Vec vec_from_json(const json& j, const std::string& name) {
    if (!j.is_array()) throw StructuralError("field '" + name + "' must be an array");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i], name);
    return v;
}

ojson instance_to_json(const QuantumGroupData& d) {
    const int n = d.dim;
    auto tensor = [n](const Tensor3& t) {
        ojson out = ojson::array();
        for (int a = 0; a < n; ++a) out.push_back(mat_to_json(t.slice(a)));
        return out;
    };
    ojson j;
    j["name"] = d.name;
    j["dim"] = n;
    j["basis_labels"] = d.basis_labels;
    j["mult"] = tensor(d.mult);
    j["coproduct"] = tensor(d.coproduct);
    j["unit"] = vec_to_json(d.unit);
    j["counit"] = vec_to_json(d.counit);
    j["antipode"] = mat_to_json(d.antipode);
    j["star"] = mat_to_json(d.star);
    j["haar"] = vec_to_json(d.haar);
    return j;
}

QuantumGroupData instance_from_json(const json& j) {
    if (!j.is_object()) throw StructuralError("instance must be a JSON object");
    QuantumGroupData d;
    const json& name = field(j, "name");
    if (!name.is_string()) throw StructuralError("field 'name' must be a string");
    d.name = name.get<std::string>();
    const json& dim = field(j, "dim");
    if (!dim.is_number_integer() || dim.get<int>() <= 0) throw StructuralError("field 'dim' must be a positive integer");
    const int n = dim.get<int>();
    d.dim = n;
    const json& labels = field(j, "basis_labels");
    expect_array(labels, n, "basis_labels");
    for (const auto& l : labels) {
        if (!l.is_string()) throw StructuralError("field 'basis_labels' must hold strings");
        d.basis_labels.push_back(l.get<std::string>());
    }
    d.mult = tensor_from_json(field(j, "mult"), n, "mult");
    d.coproduct = tensor_from_json(field(j, "coproduct"), n, "coproduct");
    for (auto [ptr, nm] : {std::pair{&d.unit, "unit"}, {&d.counit, "counit"}, {&d.haar, "haar"}}) {
        const json& f = field(j, nm);
        expect_array(f, n, nm);
        *ptr = vec_from_json(f, nm);
    }
    d.antipode = mat_from_json(field(j, "antipode"), n, "antipode");
    d.star = mat_from_json(field(j, "star"), n, "star");
    return d;
}

QG load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open instance file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw StructuralError("instance file " + path + " is not valid JSON: " + e.what());
    }
    return make_group(instance_from_json(j));
}

void save_instance(const QuantumGroupData& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write " + path);
    out << instance_to_json(d).dump(1) << "\n";
}

}  // namespace qglab

#pragma once

#include <string>

#include <json.hpp>

#include "qglab/quantum_group.hpp"

namespace qglab {

// Instance files: {name, dim, basis_labels, mult, coproduct, unit, counit, antipode, star, haar},
// every complex number stored as [re, im].
nlohmann::ordered_json instance_to_json(const QuantumGroupData& d);
QuantumGroupData instance_from_json(const nlohmann::json& j);

QG load_instance(const std::string& path);
void save_instance(const QuantumGroupData& d, const std::string& path);

nlohmann::ordered_json complex_to_json(cd z);
nlohmann::ordered_json vec_to_json(const Vec& v);
nlohmann::ordered_json mat_to_json(const Mat& m);
Vec vec_from_json(const nlohmann::json& j, const std::string& field);

}  // namespace qglab

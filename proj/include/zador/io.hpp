#pragma once

// JSON schemas.
//
// Structure (schema_version 1):
//   {
//     "schema_version": 1,
//     "basis":   [[...], ...],                 // n x n, rows are generators
//     "classes": {"label": [[...], ...], ...},  // order is preserved
//     "weights": [{"a": "even", "b": "odd", "w": 0.5},
//                 {"a": "even", "b": "odd", "w_linear": [c0, c1]}],
//     "parameter": {"name": "alpha", "value": 1.25, "lo": 0.5, "hi": 1.45}
//   }
// "w_linear" makes the weight c0 + c1 * parameter; "weights" and
// "parameter" are optional.
//
// Summary (schema_version 1): see summary_to_json.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zador/error.hpp"
#include "zador/merit.hpp"
#include "zador/periodic_structure.hpp"

namespace zador {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct WeightEntry {
  std::string a, b;
  double constant = 0.5;
  double per_parameter = 0.0;
};

struct ScalarParameter {
  std::string name;
  double value = 0.0;
  double lo = 0.0, hi = 0.0;
};

/// Dimension-agnostic structure description as read from JSON.
struct StructureDoc {
  int dimension = 0;
  std::vector<std::vector<double>> basis;
  std::vector<std::pair<std::string, std::vector<std::vector<double>>>> classes;
  std::vector<WeightEntry> weights;
  std::optional<ScalarParameter> parameter;
};

namespace detail {

inline std::vector<double> read_vector(const ordered_json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw Error(ErrorKind::InvalidInput, what + " must be an array of " + std::to_string(n) + " numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorKind::InvalidInput, what + " must contain numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace detail

inline StructureDoc structure_doc_from_json(const ordered_json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "structure must be a JSON object");
    if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
      throw Error(ErrorKind::InvalidInput, "unsupported or missing schema_version");
    StructureDoc doc;
    const auto& basis = j.at("basis");
    if (!basis.is_array() || basis.empty()) throw Error(ErrorKind::InvalidInput, "basis must be a non-empty array");
    doc.dimension = static_cast<int>(basis.size());
    for (const auto& row : basis) doc.basis.push_back(detail::read_vector(row, doc.dimension, "basis row"));
    const auto& classes = j.at("classes");
    if (!classes.is_object() || classes.empty()) throw Error(ErrorKind::InvalidInput, "classes must be a non-empty object");
    for (const auto& [label, reps] : classes.items()) {
      if (!reps.is_array()) throw Error(ErrorKind::InvalidInput, "class '" + label + "' must list vectors");
      std::vector<std::vector<double>> pts;
      for (const auto& r : reps) pts.push_back(detail::read_vector(r, doc.dimension, "representative"));
      doc.classes.emplace_back(label, std::move(pts));
    }
    if (j.contains("parameter")) {
      const auto& p = j.at("parameter");
      doc.parameter = ScalarParameter{p.at("name").get<std::string>(), p.at("value").get<double>(),
                                      p.at("lo").get<double>(), p.at("hi").get<double>()};
      if (!(doc.parameter->lo < doc.parameter->hi))
        throw Error(ErrorKind::InvalidInput, "parameter bracket requires lo < hi");
    }
    if (j.contains("weights")) {
      for (const auto& w : j.at("weights")) {
        WeightEntry e{w.at("a").get<std::string>(), w.at("b").get<std::string>()};
        if (w.contains("w")) {
          e.constant = w.at("w").get<double>();
        } else if (w.contains("w_linear")) {
          const auto c = detail::read_vector(w.at("w_linear"), 2, "w_linear");
          if (!doc.parameter) throw Error(ErrorKind::InvalidInput, "w_linear requires a top-level parameter");
          e.constant = c[0];
          e.per_parameter = c[1];
        } else {
          throw Error(ErrorKind::InvalidInput, "weight entry needs 'w' or 'w_linear'");
        }
        doc.weights.push_back(e);
      }
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed structure JSON: ") + e.what());
  }
}

inline ordered_json structure_doc_to_json(const StructureDoc& doc) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["basis"] = doc.basis;
  ordered_json classes = ordered_json::object();
  for (const auto& [label, reps] : doc.classes) classes[label] = reps;
  j["classes"] = classes;
  if (doc.parameter) {
    j["parameter"] = {{"name", doc.parameter->name},
                      {"value", doc.parameter->value},
                      {"lo", doc.parameter->lo},
                      {"hi", doc.parameter->hi}};
  }
  ordered_json weights = ordered_json::array();
  for (const auto& w : doc.weights) {
    ordered_json e = {{"a", w.a}, {"b", w.b}};
    if (w.per_parameter != 0.0) e["w_linear"] = {w.constant, w.per_parameter};
    else e["w"] = w.constant;
    weights.push_back(e);
  }
  j["weights"] = weights;
  return j;
}

/// Builds the structure, evaluating parameterized weights at `parameter`
/// (defaulting to the document's own value).
template <int N>
PeriodicStructure<N> instantiate(const StructureDoc& doc, std::optional<double> parameter = std::nullopt) {
  if (doc.dimension != N) throw Error(ErrorKind::InvalidInput, "structure dimension mismatch");
  Mat<N> basis;
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) basis(r, c) = doc.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  std::vector<SiteClass<N>> classes;
  for (const auto& [label, reps] : doc.classes) {
    SiteClass<N> sc{label, {}};
    for (const auto& r : reps) sc.representatives.push_back(Eigen::Map<const Vec<N>>(r.data()));
    classes.push_back(std::move(sc));
  }
  PeriodicStructure<N> s(Lattice<N>(basis), std::move(classes));
  const double t = parameter.value_or(doc.parameter ? doc.parameter->value : 0.0);
  for (const auto& w : doc.weights) s.set_wall_weight(s.class_index(w.a), s.class_index(w.b), w.constant + w.per_parameter * t);
  return s;
}

/// The A15 preset expressed in the structure schema, parameterized by alpha.
inline StructureDoc a15_doc(double alpha) {
  StructureDoc doc;
  doc.dimension = 3;
  doc.basis = {{4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
  doc.classes = {{"even", {{0, 0, 0}, {2, 2, 2}}},
                 {"odd", {{0, 1, 2}, {0, -1, 2}, {2, 0, 1}, {2, 0, -1}, {1, 2, 0}, {-1, 2, 0}}}};
  doc.weights = {{"even", "odd", 0.0, 0.4}};
  doc.parameter = ScalarParameter{"alpha", alpha, 0.5, 1.45};
  return doc;
}

inline ordered_json summary_to_json(const QuantizerSummary& s) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["dimension"] = s.dimension;
  j["tile_volume"] = s.tile_volume;
  j["cell_count"] = s.cell_count;
  ordered_json classes = ordered_json::array();
  for (const auto& c : s.classes)
    classes.push_back({{"label", c.label},
                       {"multiplicity", c.multiplicity},
                       {"volume", c.volume},
                       {"second_moment", c.second_moment},
                       {"probability", c.probability}});
  j["classes"] = classes;
  j["total_second_moment"] = s.total_second_moment;
  j["g_variable"] = s.g_variable;
  j["g_fixed"] = s.g_fixed;
  j["ratio"] = s.ratio;
  j["rate"] = {{"entropy_bits", s.rate.entropy_bits}, {"index_bits", s.rate.index_bits}, {"rate", s.rate.rate}};
  j["covering"] = {{"radius", s.covering.radius}, {"thickness", s.covering.thickness}};
  return j;
}

inline QuantizerSummary summary_from_json(const ordered_json& j) {
  try {
    QuantizerSummary s;
    if (j.at("schema_version") != kSchemaVersion) throw Error(ErrorKind::InvalidInput, "unsupported schema_version");
    s.dimension = j.at("dimension").get<int>();
    s.tile_volume = j.at("tile_volume").get<double>();
    s.cell_count = j.at("cell_count").get<int>();
    for (const auto& c : j.at("classes"))
      s.classes.push_back({c.at("label").get<std::string>(), c.at("multiplicity").get<int>(),
                           c.at("volume").get<double>(), c.at("second_moment").get<double>(),
                           c.at("probability").get<double>()});
    s.total_second_moment = j.at("total_second_moment").get<double>();
    s.g_variable = j.at("g_variable").get<double>();
    s.g_fixed = j.at("g_fixed").get<double>();
    s.ratio = j.at("ratio").get<double>();
    const auto& r = j.at("rate");
    s.rate = {r.at("entropy_bits").get<double>(), r.at("index_bits").get<double>(), r.at("rate").get<double>()};
    const auto& c = j.at("covering");
    s.covering = {c.at("radius").get<double>(), c.at("thickness").get<double>()};
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed summary JSON: ") + e.what());
  }
}

}  // namespace zador

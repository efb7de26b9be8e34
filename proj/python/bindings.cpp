// Python bindings for the main operations: metrics, structured-output
// parsing, dataset handling, and config-driven runs. Values cross the
// boundary as plain dicts/lists via JSON conversion.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "pref/config.hpp"
#include "pref/dataset.hpp"
#include "pref/json_io.hpp"
#include "pref/metrics.hpp"
#include "pref/orchestrator.hpp"
#include "pref/structured.hpp"
#include "pref/validation.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object json_to_py(const json& value) {
    switch (value.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(value.get<bool>());
        case json::value_t::number_integer: return py::int_(value.get<long long>());
        case json::value_t::number_unsigned: return py::int_(value.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(value.get<double>());
        case json::value_t::string: return py::str(value.get<std::string>());
        case json::value_t::array: {
            py::list list;
            for (const auto& item : value) list.append(json_to_py(item));
            return list;
        }
        case json::value_t::object: {
            py::dict dict;
            for (const auto& [key, item] : value.items()) {
                dict[py::str(key)] = json_to_py(item);
            }
            return dict;
        }
        default: return py::none();
    }
}

json py_to_json(py::handle value) {
    if (value.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(value)) return value.cast<bool>();
    if (py::isinstance<py::int_>(value)) return value.cast<long long>();
    if (py::isinstance<py::float_>(value)) return value.cast<double>();
    if (py::isinstance<py::str>(value)) return value.cast<std::string>();
    if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
        json array = json::array();
        for (py::handle item : value) array.push_back(py_to_json(item));
        return array;
    }
    if (py::isinstance<py::dict>(value)) {
        json object = json::object();
        for (auto item : value.cast<py::dict>()) {
            object[item.first.cast<std::string>()] = py_to_json(item.second);
        }
        return object;
    }
    throw py::type_error("unsupported value type for JSON conversion");
}

pref::ScoreMatrix matrix_from_rows(const std::vector<std::pair<std::size_t, std::vector<double>>>& rows) {
    pref::ScoreMatrix m;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.rows.push_back({"row" + std::to_string(i), rows[i].first, rows[i].second});
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Personalised reference-free evaluation pipeline (core bindings)";

    // --- metrics ---------------------------------------------------------
    m.def("accuracy",
          [](const std::vector<std::pair<std::size_t, std::vector<double>>>& rows) {
              return pref::accuracy(matrix_from_rows(rows));
          },
          py::arg("rows"), "rows: list of (gold_index, scores)");
    m.def("mse",
          [](const std::vector<std::pair<std::size_t, std::vector<double>>>& rows) {
              return pref::mse(matrix_from_rows(rows));
          },
          py::arg("rows"));
    m.def("ndcg",
          [](const std::vector<std::pair<std::size_t, std::vector<double>>>& rows) {
              return pref::ndcg(matrix_from_rows(rows));
          },
          py::arg("rows"));
    m.def("kendall_tau",
          [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              return pref::kendall_tau(pref::RankVector{a}, pref::RankVector{b});
          },
          py::arg("a"), py::arg("b"));
    m.def("spearman_rho",
          [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              return pref::spearman_rho(pref::RankVector{a}, pref::RankVector{b});
          },
          py::arg("a"), py::arg("b"));
    m.def("pearson_r", &pref::pearson_r, py::arg("x"), py::arg("y"));

    // --- structured output ------------------------------------------------
    m.def("parse_structured",
          [](const std::string& text, const std::string& kind, std::size_t expected_count,
             bool allow_augmentation) {
              pref::StructuredSchema schema;
              if (kind == "guideline") {
                  schema = pref::GuidelineSchema{};
              } else if (kind == "ordering") {
                  schema = pref::OrderingSchema{allow_augmentation};
              } else if (kind == "score") {
                  schema = pref::ScoreSchema{};
              } else if (kind == "score_vector") {
                  schema = pref::ScoreVectorSchema{expected_count};
              } else {
                  throw py::value_error("kind must be one of guideline/ordering/score/score_vector");
              }
              const pref::ParseAttempt attempt = pref::parse_structured(text, schema);
              py::dict out;
              out["ok"] = attempt.ok();
              out["issues"] = attempt.issues;
              out["value"] = attempt.ok() ? json_to_py(*attempt.value) : py::object(py::none());
              return out;
          },
          py::arg("text"), py::arg("kind"), py::arg("expected_count") = 0,
          py::arg("allow_augmentation") = true);

    // --- dataset ----------------------------------------------------------
    m.def("load_prefeval", [](const std::string& path) {
        const pref::LoadedDataset loaded = pref::load_prefeval(path);
        py::list instances;
        for (const auto& instance : loaded.instances) {
            instances.append(json_to_py(json(instance)));
        }
        py::dict out;
        out["instances"] = instances;
        out["manifest"] = json_to_py(pref::manifest_to_json(loaded.manifest));
        return out;
    });
    m.def("split_ids",
          [](const std::string& path, double test_fraction, std::uint64_t seed) {
              const pref::LoadedDataset loaded = pref::load_prefeval(path);
              const pref::SplitResult parts = pref::split(loaded.instances, test_fraction, seed);
              std::vector<std::string> train;
              std::vector<std::string> test;
              for (const auto& i : parts.train) train.push_back(i.id);
              for (const auto& i : parts.test) test.push_back(i.id);
              py::dict out;
              out["train"] = train;
              out["test"] = test;
              return out;
          },
          py::arg("path"), py::arg("test_fraction") = 0.2, py::arg("seed") = 42);

    // --- validation -------------------------------------------------------
    m.def("validate_instance", [](py::dict instance) {
        const auto parsed = py_to_json(instance).get<pref::EvalInstance>();
        return pref::validate_instance(parsed).violations;
    });

    // --- end-to-end -------------------------------------------------------
    m.def("run",
          [](py::dict config) {
              pref::Orchestrator orchestrator(pref::config_from_json(py_to_json(config)));
              const pref::RunArtifact artifact = orchestrator.run();
              if (!orchestrator.config().output_dir.empty()) {
                  pref::write_run_artifact(artifact, orchestrator.config().output_dir);
              }
              return json_to_py(artifact.metrics);
          },
          py::arg("config"), "Runs the configured judge mode; returns the metrics document.");
}

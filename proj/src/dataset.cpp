#include "pref/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "pref/errors.hpp"
#include "pref/hash.hpp"
#include "pref/json_io.hpp"
#include "pref/validation.hpp"

namespace pref {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetParseError(0, "cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

EvalInstance parse_line(const std::string& line, std::size_t line_no) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw DatasetParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    try {
        return j.get<EvalInstance>();
    } catch (const json::exception& e) {
        throw DatasetParseError(line_no, std::string("bad instance schema: ") + e.what());
    }
}

}  // namespace

LoadedDataset load_prefeval_text(const std::string& text, const std::string& source_path) {
    LoadedDataset out;
    out.manifest.source_path = source_path;
    out.manifest.checksum = content_hash(text);

    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.instances.push_back(parse_line(line, line_no));
    }
    if (out.instances.empty()) throw DatasetParseError(line_no, "no instances in file");

    std::vector<std::string> bad_ids;
    std::vector<std::string> violations;
    std::set<std::string> seen_ids;
    bool all_have_explanations = true;
    for (const auto& instance : out.instances) {
        auto report = validate_instance(instance);
        if (!report.ok()) {
            bad_ids.push_back(instance.id);
            for (const auto& v : report.violations) {
                violations.push_back(instance.id + ": " + v);
            }
        }
        if (!seen_ids.insert(instance.id).second) {
            bad_ids.push_back(instance.id);
            violations.push_back(instance.id + ": duplicate instance id");
        }
        if (!instance.explanation.has_value()) all_have_explanations = false;
        ++out.manifest.candidate_histogram[instance.candidates.size()];
    }
    if (!violations.empty()) {
        throw DatasetValidationError(std::move(bad_ids), std::move(violations));
    }

    out.manifest.n_instances = out.instances.size();
    out.manifest.has_explanations = all_have_explanations;
    return out;
}

LoadedDataset load_prefeval(const std::string& path) {
    return load_prefeval_text(read_file(path), path);
}

SplitResult split(const std::vector<EvalInstance>& instances, double test_fraction,
                  std::uint64_t seed) {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw BadFraction(test_fraction);
    }

    // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
    // implementation-defined, and the split must be byte-identical across
    // platforms. mt19937_64 itself is pinned by the standard.
    std::vector<std::size_t> order(instances.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 engine(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(engine() % i);
        std::swap(order[i - 1], order[j]);
    }

    const auto n_test = static_cast<std::size_t>(
        std::llround(static_cast<double>(instances.size()) * test_fraction));
    SplitResult result;
    for (std::size_t k = 0; k < order.size(); ++k) {
        (k < n_test ? result.test : result.train).push_back(instances[order[k]]);
    }
    return result;
}

SplitResult apply_split_file(const std::vector<EvalInstance>& instances,
                             const std::string& path) {
    json spec;
    try {
        std::ifstream in(path);
        if (!in) throw DatasetParseError(0, "cannot open split file: " + path);
        in >> spec;
    } catch (const json::exception& e) {
        throw DatasetParseError(0, std::string("invalid split file: ") + e.what());
    }

    std::unordered_map<std::string, const EvalInstance*> by_id;
    for (const auto& instance : instances) by_id[instance.id] = &instance;

    auto take = [&](const char* part) {
        std::vector<EvalInstance> out;
        if (!spec.contains(part) || !spec[part].is_array()) {
            throw DatasetParseError(0, std::string("split file missing list: ") + part);
        }
        for (const auto& id : spec[part]) {
            const auto key = id.get<std::string>();
            auto it = by_id.find(key);
            if (it == by_id.end()) {
                throw DatasetValidationError({key}, {key + ": split file names unknown instance"});
            }
            out.push_back(*it->second);
            by_id.erase(it);
        }
        return out;
    };

    SplitResult result;
    result.train = take("train");
    result.test = take("test");
    if (!by_id.empty()) {
        std::vector<std::string> missing;
        std::vector<std::string> violations;
        for (const auto& [id, _] : by_id) missing.push_back(id);
        std::sort(missing.begin(), missing.end());
        for (const auto& id : missing) violations.push_back(id + ": not covered by split file");
        throw DatasetValidationError(std::move(missing), std::move(violations));
    }
    return result;
}

void write_split_file(const SplitResult& split, const std::string& path) {
    json spec;
    spec["train"] = json::array();
    spec["test"] = json::array();
    for (const auto& instance : split.train) spec["train"].push_back(instance.id);
    for (const auto& instance : split.test) spec["test"].push_back(instance.id);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write split file: " + path);
    out << spec.dump(2) << "\n";
}

nlohmann::json manifest_to_json(const DatasetManifest& manifest) {
    json histogram = json::object();
    for (const auto& [n, count] : manifest.candidate_histogram) {
        histogram[std::to_string(n)] = count;
    }
    return json{{"source_path", manifest.source_path},
                {"n_instances", manifest.n_instances},
                {"candidate_histogram", std::move(histogram)},
                {"has_explanations", manifest.has_explanations},
                {"checksum", manifest.checksum}};
}

}  // namespace pref

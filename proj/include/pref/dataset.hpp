#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pref/types.hpp"

namespace pref {

/// Summary of a loaded dataset file: enough to pin the exact corpus a run
/// consumed without copying it into every artifact.
struct DatasetManifest {
    std::string source_path;
    std::size_t n_instances = 0;
    std::map<std::size_t, std::size_t> candidate_histogram;  // n_candidates -> count
    bool has_explanations = false;                           // true iff every instance has one
    std::string checksum;                                    // content hash of the raw bytes

    bool operator==(const DatasetManifest&) const = default;
};

struct LoadedDataset {
    std::vector<EvalInstance> instances;
    DatasetManifest manifest;
};

struct SplitResult {
    std::vector<EvalInstance> train;
    std::vector<EvalInstance> test;
};

/// Parses a PrefEval-format JSONL file (one instance per line, schema
/// {"id","question","preference","explanation"?,"candidates":[...],
/// "gold_index"}) and validates every instance plus corpus-level id
/// uniqueness. Throws DatasetParseError on the first malformed line and
/// DatasetValidationError with all offending ids otherwise.
LoadedDataset load_prefeval(const std::string& path);

/// Parses instances from an already-loaded JSONL string; `source_path` is
/// recorded in the manifest verbatim.
LoadedDataset load_prefeval_text(const std::string& text, const std::string& source_path);

/// Seeded uniform shuffle (Fisher-Yates over mt19937_64, hand-rolled so the
/// byte layout is identical across standard libraries), then partition: the
/// first round(n * test_fraction) shuffled instances form the test set.
/// Requires 0 < test_fraction < 1.
SplitResult split(const std::vector<EvalInstance>& instances, double test_fraction,
                  std::uint64_t seed = 42);

/// Replays an externally provided split: a JSON file {"train":[ids...],
/// "test":[ids...]} that must cover the instance set exactly.
SplitResult apply_split_file(const std::vector<EvalInstance>& instances,
                             const std::string& path);

/// Writes the id lists of an existing split in the format apply_split_file
/// reads back.
void write_split_file(const SplitResult& split, const std::string& path);

nlohmann::json manifest_to_json(const DatasetManifest& manifest);

}  // namespace pref

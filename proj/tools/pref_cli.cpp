// Command-line front end: wires configs to the orchestrator and prints
// artifacts. Exit codes: 0 success, 1 config/dataset error, 2 when every
// instance was excluded.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pref/config.hpp"
#include "pref/dataset.hpp"
#include "pref/errors.hpp"
#include "pref/metrics.hpp"
#include "pref/orchestrator.hpp"

namespace {

using nlohmann::json;

struct CommonArgs {
    std::string config_path;
    std::optional<std::string> dataset;
    std::optional<std::string> output_dir;
    std::optional<std::string> cache_dir;
    std::optional<std::string> fixtures;
    std::optional<std::size_t> parallelism;
    std::optional<double> test_fraction;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> split_file;
    std::optional<std::string> template_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--dataset", args.dataset, "override: dataset JSONL path");
    cmd->add_option("--output-dir", args.output_dir, "override: artifact directory");
    cmd->add_option("--cache-dir", args.cache_dir, "override: cache directory");
    cmd->add_option("--fixtures", args.fixtures, "override: mock fixture file");
    cmd->add_option("--parallelism", args.parallelism, "override: worker pool size");
    cmd->add_option("--test-fraction", args.test_fraction, "override: test split fraction");
    cmd->add_option("--seed", args.seed, "override: split seed");
    cmd->add_option("--split-file", args.split_file, "override: explicit split file");
    cmd->add_option("--template-dir", args.template_dir, "override: prompt template directory");
}

pref::RunConfig resolve_config(const CommonArgs& args) {
    pref::RunConfig config = pref::load_config(args.config_path);
    if (args.dataset) config.dataset_path = *args.dataset;
    if (args.output_dir) config.output_dir = *args.output_dir;
    if (args.cache_dir) config.cache_dir = *args.cache_dir;
    if (args.fixtures) config.backend.fixture_path = *args.fixtures;
    if (args.parallelism) config.parallelism = *args.parallelism;
    if (args.test_fraction) {
        config.split.test_fraction = *args.test_fraction;
        config.split.split_file.reset();
    }
    if (args.seed) config.split.seed = *args.seed;
    if (args.split_file) config.split.split_file = *args.split_file;
    if (args.template_dir) config.templates.dir = *args.template_dir;
    return config;
}

int execute_run(pref::RunConfig config) {
    if (config.output_dir.empty()) {
        throw pref::ConfigError("an output directory is required (output_dir or --output-dir)");
    }
    pref::Orchestrator orchestrator(std::move(config));
    pref::RunArtifact artifact = orchestrator.run();
    pref::write_run_artifact(artifact, orchestrator.config().output_dir);
    std::cout << "wrote artifacts to " << orchestrator.config().output_dir << "\n";

    const json& row = artifact.metrics["judged"][0];
    if (row["n_instances"].get<std::size_t>() > 0 && row["n_scored"].get<std::size_t>() == 0) {
        std::cerr << "every instance was excluded; see exclusions in metrics.json\n";
        return 2;
    }
    return 0;
}

int cmd_run(const CommonArgs& args, std::optional<pref::JudgeMode> forced_mode) {
    pref::RunConfig config = resolve_config(args);
    if (forced_mode) config.judge_mode = *forced_mode;
    return execute_run(std::move(config));
}

int cmd_oracle(const CommonArgs& args) {
    pref::RunConfig config = resolve_config(args);
    config.oracle_mode = true;
    if (config.output_dir.empty()) {
        throw pref::ConfigError("an output directory is required (output_dir or --output-dir)");
    }
    pref::Orchestrator orchestrator(std::move(config));
    pref::OracleArtifact artifact = orchestrator.oracle_experiment();
    pref::write_oracle_artifact(artifact, orchestrator.config().output_dir);
    std::cout << "wrote artifacts to " << orchestrator.config().output_dir << "\n";

    if (artifact.orderings.empty() && !artifact.exclusions.empty()) {
        std::cerr << "every instance was excluded; see exclusions in metrics.json\n";
        return 2;
    }
    return 0;
}

int cmd_aug_stats(const CommonArgs& args, std::string input) {
    if (input.empty()) {
        pref::RunConfig config = resolve_config(args);
        if (config.output_dir.empty()) {
            throw pref::ConfigError("aug-stats needs --input or an output_dir in the config");
        }
        input = (std::filesystem::path(config.output_dir) / "personalized.jsonl").string();
    }
    const auto guidelines = pref::read_personalized_jsonl(input);
    const auto stats = pref::augmentation_stats(guidelines);
    std::cout << pref::augmentation_to_json(stats).dump(2) << "\n";
    return 0;
}

int cmd_report(const CommonArgs& args, std::string metrics_path, const std::string& format) {
    if (metrics_path.empty()) {
        pref::RunConfig config = resolve_config(args);
        if (config.output_dir.empty()) {
            throw pref::ConfigError("report needs --metrics or an output_dir in the config");
        }
        metrics_path = (std::filesystem::path(config.output_dir) / "metrics.json").string();
    }
    std::ifstream in(metrics_path);
    if (!in) throw pref::ConfigError("cannot open metrics file: " + metrics_path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw pref::ConfigError("invalid metrics JSON: " + std::string(e.what()));
    }
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << pref::render_report_markdown(doc);
    }
    return 0;
}

int cmd_validate_dataset(const CommonArgs& args) {
    std::string path;
    if (args.dataset) {
        path = *args.dataset;
    } else {
        path = pref::load_config(args.config_path).dataset_path;
    }
    const pref::LoadedDataset loaded = pref::load_prefeval(path);
    std::cout << pref::manifest_to_json(loaded.manifest).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Personalised reference-free evaluation pipeline"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string baseline_kind = "zero_shot";
    std::string aug_input;
    std::string metrics_path;
    std::string report_format = "markdown";

    auto* run = app.add_subcommand("run", "full three-stage evaluation over the test split");
    add_common(run, args);
    auto* ablate = app.add_subcommand("ablate", "ablation: general guideline only (w/o UP)");
    add_common(ablate, args);
    auto* baseline = app.add_subcommand("baseline", "zero-shot or reminder judge");
    add_common(baseline, args);
    baseline->add_option("--kind", baseline_kind, "zero_shot | reminder")
        ->check(CLI::IsMember({"zero_shot", "reminder"}));
    auto* oracle = app.add_subcommand("oracle-corr", "preference vs explanation rank correlation");
    add_common(oracle, args);
    auto* aug = app.add_subcommand("aug-stats", "augmentation statistics of a finished run");
    add_common(aug, args);
    aug->get_option("--config")->required(false);
    aug->add_option("--input", aug_input, "personalized.jsonl to analyze");
    auto* report = app.add_subcommand("report", "re-render a metrics document");
    add_common(report, args);
    report->get_option("--config")->required(false);
    report->add_option("--metrics", metrics_path, "metrics.json to render");
    report->add_option("--format", report_format, "json | markdown")
        ->check(CLI::IsMember({"json", "markdown"}));
    auto* validate = app.add_subcommand("validate-dataset", "parse + validate a dataset file");
    add_common(validate, args);
    validate->get_option("--config")->required(false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(args, std::nullopt);
        if (ablate->parsed()) return cmd_run(args, pref::JudgeMode::PrefNoUp);
        if (baseline->parsed()) {
            return cmd_run(args, pref::judge_mode_from_string(baseline_kind));
        }
        if (oracle->parsed()) return cmd_oracle(args);
        if (aug->parsed()) return cmd_aug_stats(args, aug_input);
        if (report->parsed()) return cmd_report(args, metrics_path, report_format);
        if (validate->parsed()) {
            if (!args.dataset && args.config_path.empty()) {
                throw pref::ConfigError("validate-dataset needs --dataset or --config");
            }
            return cmd_validate_dataset(args);
        }
    } catch (const pref::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

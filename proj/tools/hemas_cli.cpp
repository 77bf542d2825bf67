#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hemas/errors.hpp"
#include "hemas/harness.hpp"

namespace {

using namespace hemas;

struct RunOptions {
    std::string config_path;
    std::string preset_name;
    std::string function;
    int dimension = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int repetitions = 0;
    int eval_multiplier = 0;
    std::string output_dir;
    std::string label;
};

ExperimentConfig resolve_run_config(const RunOptions& opt) {
    ExperimentConfig config;
    if (!opt.config_path.empty()) {
        config = load_config(opt.config_path);
    } else if (!opt.preset_name.empty()) {
        config = preset(opt.preset_name);
    } else {
        throw InvalidConfig("run: either --config or --preset is required");
    }
    // CLI flags override file/preset values.
    if (!opt.function.empty()) config.function = opt.function;
    if (opt.dimension > 0) config.dimension = opt.dimension;
    if (opt.seed_set) config.master_seed = opt.seed;
    if (opt.repetitions > 0) config.repetitions = opt.repetitions;
    if (opt.eval_multiplier > 0) config.eval_multiplier = opt.eval_multiplier;
    if (!opt.output_dir.empty()) config.output_dir = opt.output_dir;
    if (!opt.label.empty()) config.label = opt.label;
    return config;
}

void print_campaign_summary(const CampaignResult& campaign) {
    const auto sample = final_fitness_sample(campaign);
    const auto d = describe(sample);
    std::printf("%s %s %dD: %d runs, %ld evals each\n", campaign.config.label.c_str(),
                campaign.config.function.c_str(), campaign.config.dimension,
                campaign.config.repetitions, campaign.runs.front().evals_used);
    std::printf("  mean %.6g  median %.6g  sd %.6g  min %.6g  max %.6g\n", d.mean, d.median,
                d.sd, d.min, d.max);
    long triggers = 0;
    for (const auto& r : campaign.runs) triggers += static_cast<long>(r.triggers.size());
    if (campaign.config.algorithm == Algorithm::Hemas) {
        std::printf("  hybridization triggers: %ld across %d runs\n", triggers,
                    campaign.config.repetitions);
    }
    if (!campaign.config.output_dir.empty()) {
        std::printf("  results written to %s\n", campaign.config.output_dir.c_str());
    }
}

int cmd_run(const RunOptions& opt) {
    const ExperimentConfig config = resolve_run_config(opt);
    const CampaignResult campaign = run_campaign(config);
    print_campaign_summary(campaign);
    return 0;
}

int cmd_compare(const std::vector<std::string>& dirs, const std::string& csv_path) {
    const ComparisonResult result = compare_campaigns(dirs);
    std::cout << render_comparison(result);
    if (!csv_path.empty()) {
        write_comparison_csv(result, csv_path);
        std::printf("pairwise results written to %s\n", csv_path.c_str());
    }
    return 0;
}

int cmd_table(const std::vector<int>& dims, const std::vector<std::string>& functions,
              const std::vector<std::string>& presets, std::uint64_t seed, int reps,
              const std::string& out_root) {
    namespace fs = std::filesystem;
    for (const auto& function : functions) {
        for (int dim : dims) {
            std::vector<SampleSet> samples;
            for (const auto& name : presets) {
                ExperimentConfig config = preset(name);
                config.function = function;
                config.dimension = dim;
                config.master_seed = seed;
                config.repetitions = reps;
                if (!out_root.empty()) {
                    config.output_dir =
                        (fs::path(out_root) / (function + std::to_string(dim)) / name)
                            .string();
                }
                const CampaignResult campaign = run_campaign(config);
                samples.push_back(final_fitness_sample(campaign));
            }
            const ComparisonResult result =
                compare_samples(function, dim, std::move(samples));
            std::cout << render_comparison(result) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EMAS / HEMAS continuous-optimization experiment harness"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run one experiment campaign");
    run->add_option("--config", run_opt.config_path, "JSON config file");
    run->add_option("--preset", run_opt.preset_name,
                    "Preset: emas, hemas1, hemas2, hemas3");
    run->add_option("--function", run_opt.function,
                    "Benchmark: sphere, ackley, griewank, rastrigin");
    run->add_option("--dim", run_opt.dimension, "Problem dimension");
    run->add_option("--seed", run_opt.seed, "Master seed")
        ->each([&](const std::string&) { run_opt.seed_set = true; });
    run->add_option("--reps", run_opt.repetitions, "Number of repetitions");
    run->add_option("--multiplier", run_opt.eval_multiplier,
                    "Evaluation budget per dimension (default 100)");
    run->add_option("--out", run_opt.output_dir, "Output directory for CSV results");
    run->add_option("--label", run_opt.label, "Group label for comparisons");

    std::vector<std::string> compare_dirs;
    std::string compare_csv;
    auto* compare = app.add_subcommand("compare", "Compare stored campaigns");
    compare->add_option("dirs", compare_dirs, "Campaign output directories")
        ->expected(2, -1)
        ->required();
    compare->add_option("--csv", compare_csv, "Write pairwise results to this CSV file");

    std::vector<int> table_dims{100};
    std::vector<std::string> table_functions{"sphere", "ackley", "griewank", "rastrigin"};
    std::vector<std::string> table_presets{"emas", "hemas1", "hemas2", "hemas3"};
    std::uint64_t table_seed = 1;
    int table_reps = 30;
    std::string table_out;
    auto* table = app.add_subcommand(
        "table1", "Run the benchmark grid (all presets per function and dimension)");
    table->add_option("--dims", table_dims, "Dimensions, e.g. --dims 100 300")->delimiter(',');
    table->add_option("--functions", table_functions, "Benchmark functions")->delimiter(',');
    table->add_option("--presets", table_presets, "Presets to run")->delimiter(',');
    table->add_option("--seed", table_seed, "Master seed");
    table->add_option("--reps", table_reps, "Repetitions per campaign");
    table->add_option("--out", table_out, "Root directory for campaign CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_opt);
        if (compare->parsed()) return cmd_compare(compare_dirs, compare_csv);
        if (table->parsed()) {
            return cmd_table(table_dims, table_functions, table_presets, table_seed,
                             table_reps, table_out);
        }
    } catch (const InvalidConfig& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const UnknownPreset& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const UnknownFunction& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hemas/hybrid.hpp"
#include "hemas/stats.hpp"

namespace hemas {

enum class Algorithm { Emas, Hemas };

struct ExperimentConfig {
    std::string label;  // group label in comparisons; defaults from preset/algorithm
    Algorithm algorithm = Algorithm::Emas;
    std::optional<HybridConfig> hybrid;
    std::string function = "sphere";
    int dimension = 100;
    int repetitions = 30;
    std::uint64_t master_seed = 1;
    int eval_multiplier = 100;
    std::string output_dir;  // empty: keep results in memory only
    EmasParams emas;
};

/// Throws InvalidConfig naming the offending field.
void validate(const ExperimentConfig& config);

std::uint64_t config_fingerprint(const ExperimentConfig& config);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "emas", "hemas1" (PSO under VE0), "hemas2" (PSO under ELQ1 and EGQ3),
/// "hemas3" (hemas2 plus GA under VG0.5).
ExperimentConfig preset(const std::string& name);

struct CampaignResult {
    ExperimentConfig config;
    std::vector<std::uint64_t> seeds;  // one per run, derived from master_seed
    std::vector<RunRecord> runs;
};

/// Executes `repetitions` independent runs (fanned out across workers; the
/// HEMAS_WORKERS environment variable caps the count) and, when output_dir is
/// set, writes one trajectory CSV per run plus summary.csv and campaign.json.
CampaignResult run_campaign(const ExperimentConfig& config);

SampleSet final_fitness_sample(const CampaignResult& campaign);

struct ComparisonResult {
    std::string function;
    int dimension;
    std::vector<SampleSet> samples;
    TestReport report;
};

/// Loads the final fitnesses persisted by run_campaign from each directory;
/// all campaigns must share (function, dimension).
ComparisonResult compare_campaigns(const std::vector<std::string>& dirs);

ComparisonResult compare_samples(const std::string& function, int dimension,
                                 std::vector<SampleSet> samples);

/// Aligned plain-text table; pairs with p below alpha are flagged.
std::string render_comparison(const ComparisonResult& result, double alpha = 0.05);

/// CSV columns: group_a,group_b,z,p_unadjusted,p_bonferroni.
void write_comparison_csv(const ComparisonResult& result, const std::string& path);

}  // namespace hemas

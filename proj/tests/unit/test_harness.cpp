#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hemas/errors.hpp"
#include "hemas/harness.hpp"
#include "hemas/rng.hpp"

using namespace hemas;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("hemas_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config(const std::string& out_dir = "") {
    ExperimentConfig c;
    c.label = "tiny";
    c.function = "sphere";
    c.dimension = 2;
    c.repetitions = 5;
    c.master_seed = 7;
    c.output_dir = out_dir;
    return c;
}

}  // namespace

TEST_CASE("presets") {
    auto emas = preset("emas");
    CHECK(emas.algorithm == Algorithm::Emas);
    CHECK(!emas.hybrid.has_value());

    auto h1 = preset("hemas1");
    REQUIRE(h1.hybrid.has_value());
    REQUIRE(h1.hybrid->operators.size() == 1);
    CHECK(h1.hybrid->operators[0].algorithm == HybridAlgorithm::PSO);
    CHECK(h1.hybrid->operators[0].rule.name() == "VE0");
    CHECK(h1.hybrid->period == 2000);
    CHECK(h1.hybrid->redistribution == RedistributionScheme::Proportional);

    auto h2 = preset("hemas2");
    REQUIRE(h2.hybrid->operators.size() == 2);
    CHECK(h2.hybrid->operators[0].rule.name() == "ELQ1");
    CHECK(h2.hybrid->operators[1].rule.name() == "EGQ3");
    CHECK(h2.hybrid->operators[0].algorithm == HybridAlgorithm::PSO);
    CHECK(h2.hybrid->operators[1].algorithm == HybridAlgorithm::PSO);

    auto h3 = preset("hemas3");
    REQUIRE(h3.hybrid->operators.size() == 3);
    CHECK(h3.hybrid->operators[2].algorithm == HybridAlgorithm::GA);
    CHECK(h3.hybrid->operators[2].rule.name() == "VG0.5");
    for (const auto& op : h3.hybrid->operators) CHECK(op.max_cycles == 3);

    CHECK_THROWS_AS(preset("hemas9"), UnknownPreset);
}

TEST_CASE("config json round trip") {
    auto c = preset("hemas3");
    c.function = "griewank";
    c.dimension = 321;
    c.repetitions = 17;
    c.master_seed = 999;
    auto parsed = config_from_json(config_to_json(c));
    CHECK(parsed.label == c.label);
    CHECK(parsed.algorithm == Algorithm::Hemas);
    CHECK(parsed.function == "griewank");
    CHECK(parsed.dimension == 321);
    CHECK(parsed.repetitions == 17);
    CHECK(parsed.master_seed == 999);
    REQUIRE(parsed.hybrid.has_value());
    REQUIRE(parsed.hybrid->operators.size() == 3);
    CHECK(parsed.hybrid->operators[2].rule.name() == "VG0.5");
    CHECK(config_fingerprint(parsed) == config_fingerprint(c));

    CHECK_THROWS_AS(config_from_json("{not json"), InvalidConfig);
}

TEST_CASE("validation reports the offending field") {
    auto c = tiny_config();
    c.repetitions = 0;
    try {
        validate(c);
        FAIL("expected InvalidConfig");
    } catch (const InvalidConfig& e) {
        CHECK(std::string(e.what()).find("repetitions") != std::string::npos);
    }

    c = tiny_config();
    c.algorithm = Algorithm::Hemas;  // no hybrid block
    CHECK_THROWS_AS(validate(c), InvalidConfig);

    c = preset("hemas1");
    c.hybrid->operators[0].min_participants = 1;
    CHECK_THROWS_AS(validate(c), InvalidConfig);
}

TEST_CASE("campaign: files, budget arithmetic, summary consistency") {
    TempDir tmp("campaign");
    auto campaign = run_campaign(tiny_config((tmp.path / "out").string()));

    REQUIRE(campaign.runs.size() == 5);
    for (const auto& r : campaign.runs) CHECK(r.evals_used == 200);  // 100 x dim 2

    for (int i = 0; i < 5; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "traj_%03d.csv", i);
        const auto text = slurp(tmp.path / "out" / name);
        CHECK(text.rfind("evals,best_fitness\n", 0) == 0);
        // Last sample ends at the full budget.
        const auto last_line_start = text.rfind('\n', text.size() - 2);
        const auto last = text.substr(last_line_start + 1);
        CHECK(last.rfind("200,", 0) == 0);
    }

    // Recompute the summary from disk and compare with in-memory values.
    std::ifstream summary(tmp.path / "out" / "summary.csv");
    std::string line;
    std::getline(summary, line);
    CHECK(line == "run,seed,final_best");
    int i = 0;
    while (std::getline(summary, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        CHECK(std::stoi(line.substr(0, c1)) == i);
        CHECK(std::stoull(line.substr(c1 + 1, c2 - c1 - 1)) == campaign.seeds[i]);
        CHECK(std::stod(line.substr(c2 + 1)) ==
              doctest::Approx(campaign.runs[i].final_best_fitness).epsilon(1e-15));
        ++i;
    }
    CHECK(i == 5);

    const auto meta = load_config((tmp.path / "out" / "campaign.json").string());
    CHECK(meta.function == "sphere");
    CHECK(meta.dimension == 2);
}

TEST_CASE("campaign: re-running the same config is byte-identical") {
    TempDir tmp("determinism");
    run_campaign(tiny_config((tmp.path / "a").string()));
    run_campaign(tiny_config((tmp.path / "b").string()));
    CHECK(slurp(tmp.path / "a" / "summary.csv") == slurp(tmp.path / "b" / "summary.csv"));
    CHECK(slurp(tmp.path / "a" / "traj_003.csv") == slurp(tmp.path / "b" / "traj_003.csv"));
}

TEST_CASE("campaign: lowering the repetition count keeps the earlier runs") {
    auto c5 = tiny_config();
    auto c3 = tiny_config();
    c3.repetitions = 3;
    auto full = run_campaign(c5);
    auto prefix = run_campaign(c3);
    for (int i = 0; i < 3; ++i) {
        CHECK(full.seeds[i] == prefix.seeds[i]);
        CHECK(full.runs[i].final_best_fitness == prefix.runs[i].final_best_fitness);
    }
}

TEST_CASE("compare: stored campaigns") {
    TempDir tmp("compare");
    auto a = tiny_config((tmp.path / "a").string());
    a.label = "groupA";
    auto b = tiny_config((tmp.path / "b").string());
    b.label = "groupB";
    b.master_seed = 1234;
    run_campaign(a);
    run_campaign(b);

    auto result = compare_campaigns({(tmp.path / "a").string(), (tmp.path / "b").string()});
    CHECK(result.function == "sphere");
    CHECK(result.dimension == 2);
    REQUIRE(result.samples.size() == 2);
    REQUIRE(result.report.pairwise.size() == 1);
    CHECK(result.report.pairwise[0].a == "groupA");
    CHECK(result.report.pairwise[0].b == "groupB");

    const auto table = render_comparison(result);
    CHECK(table.find("groupA") != std::string::npos);
    CHECK(table.find("Kruskal-Wallis") != std::string::npos);

    write_comparison_csv(result, (tmp.path / "cmp.csv").string());
    const auto csv = slurp(tmp.path / "cmp.csv");
    CHECK(csv.rfind("group_a,group_b,z,p_unadjusted,p_bonferroni\n", 0) == 0);
}

TEST_CASE("compare: identical campaigns are indistinguishable") {
    TempDir tmp("samecmp");
    auto a = tiny_config((tmp.path / "a").string());
    a.label = "x";
    auto b = tiny_config((tmp.path / "b").string());
    b.label = "y";  // same seeds, same runs
    run_campaign(a);
    run_campaign(b);
    auto result = compare_campaigns({(tmp.path / "a").string(), (tmp.path / "b").string()});
    CHECK(result.report.pairwise[0].z == doctest::Approx(0.0));
    CHECK(result.report.pairwise[0].p_unadjusted == doctest::Approx(1.0));
}

TEST_CASE("compare: mixed instances are rejected") {
    TempDir tmp("mixed");
    auto a = tiny_config((tmp.path / "a").string());
    auto b = tiny_config((tmp.path / "b").string());
    b.dimension = 3;
    run_campaign(a);
    run_campaign(b);
    CHECK_THROWS_AS(
        compare_campaigns({(tmp.path / "a").string(), (tmp.path / "b").string()}),
        MixedInstances);
}

TEST_CASE("four groups yield six pairwise comparisons") {
    std::vector<SampleSet> groups;
    RngStream rng(3);
    for (int g = 0; g < 4; ++g) {
        SampleSet s{"g" + std::to_string(g), {}};
        for (int i = 0; i < 10; ++i) s.values.push_back(rng.uniform(0.0, 1.0) + g);
        groups.push_back(std::move(s));
    }
    auto result = compare_samples("sphere", 2, std::move(groups));
    CHECK(result.report.pairwise.size() == 6);
}

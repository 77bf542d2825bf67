#include "hemas/harness.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hemas/errors.hpp"

namespace hemas {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string algorithm_name(Algorithm a) {
    return a == Algorithm::Emas ? "emas" : "hemas";
}

Algorithm algorithm_from_name(const std::string& s) {
    if (s == "emas") return Algorithm::Emas;
    if (s == "hemas") return Algorithm::Hemas;
    throw InvalidConfig("algorithm: expected 'emas' or 'hemas', got '" + s + "'");
}

std::string scheme_name(RedistributionScheme s) {
    switch (s) {
        case RedistributionScheme::Proportional: return "proportional";
        case RedistributionScheme::Ranking: return "ranking";
        case RedistributionScheme::Tournament: return "tournament";
    }
    return "proportional";
}

RedistributionScheme scheme_from_name(const std::string& s) {
    if (s == "proportional") return RedistributionScheme::Proportional;
    if (s == "ranking") return RedistributionScheme::Ranking;
    if (s == "tournament") return RedistributionScheme::Tournament;
    throw InvalidConfig("hybrid.redistribution: unknown scheme '" + s + "'");
}

json hybrid_to_json(const HybridConfig& h) {
    json ops = json::array();
    for (const auto& op : h.operators) {
        ops.push_back({{"algorithm", op.algorithm == HybridAlgorithm::PSO ? "pso" : "ga"},
                       {"rule", op.rule.name()},
                       {"min_participants", op.min_participants},
                       {"max_cycles", op.max_cycles}});
    }
    return {{"period", h.period},
            {"redistribution", scheme_name(h.redistribution)},
            {"operators", ops}};
}

HybridConfig hybrid_from_json(const json& j) {
    HybridConfig h;
    h.period = j.value("period", 2000L);
    h.redistribution = scheme_from_name(j.value("redistribution", "proportional"));
    for (const auto& jo : j.value("operators", json::array())) {
        HybridOperatorSpec op;
        const std::string alg = jo.at("algorithm").get<std::string>();
        if (alg == "pso") {
            op.algorithm = HybridAlgorithm::PSO;
        } else if (alg == "ga") {
            op.algorithm = HybridAlgorithm::GA;
        } else {
            throw InvalidConfig("hybrid.operators[].algorithm: unknown '" + alg + "'");
        }
        op.rule = parse_rule(jo.at("rule").get<std::string>());
        op.min_participants = jo.value("min_participants", 2);
        op.max_cycles = jo.value("max_cycles", 3);
        h.operators.push_back(op);
    }
    return h;
}

json emas_to_json(const EmasParams& p) {
    return {{"population_size", p.population_size},
            {"total_energy", p.total_energy},
            {"initial_energy", p.initial_energy},
            {"meet_transfer", p.meet_transfer},
            {"meeting_rounds", p.meeting_rounds},
            {"population_floor", p.population_floor},
            {"death_threshold", p.death_threshold},
            {"reproduction_threshold", p.reproduction_threshold}};
}

EmasParams emas_from_json(const json& j) {
    EmasParams p;
    p.population_size = j.value("population_size", p.population_size);
    p.total_energy = j.value("total_energy", p.total_energy);
    p.initial_energy = j.value("initial_energy", p.initial_energy);
    p.meet_transfer = j.value("meet_transfer", p.meet_transfer);
    p.meeting_rounds = j.value("meeting_rounds", p.meeting_rounds);
    p.population_floor = j.value("population_floor", p.population_floor);
    p.death_threshold = j.value("death_threshold", p.death_threshold);
    p.reproduction_threshold = j.value("reproduction_threshold", p.reproduction_threshold);
    return p;
}

json config_to_json_obj(const ExperimentConfig& c) {
    json j = {{"label", c.label},
              {"algorithm", algorithm_name(c.algorithm)},
              {"function", c.function},
              {"dimension", c.dimension},
              {"repetitions", c.repetitions},
              {"master_seed", c.master_seed},
              {"eval_multiplier", c.eval_multiplier},
              {"output_dir", c.output_dir},
              {"emas", emas_to_json(c.emas)}};
    if (c.hybrid) j["hybrid"] = hybrid_to_json(*c.hybrid);
    return j;
}

int worker_count() {
    if (const char* env = std::getenv("HEMAS_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string run_file_name(int run) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "traj_%03d.csv", run);
    return buf;
}

}  // namespace

void validate(const ExperimentConfig& c) {
    benchmark_from_name(c.function);  // throws UnknownFunction
    if (c.dimension < 1) throw InvalidConfig("dimension: must be >= 1");
    if (c.repetitions < 1) throw InvalidConfig("repetitions: must be >= 1");
    if (c.eval_multiplier < 1) throw InvalidConfig("eval_multiplier: must be >= 1");
    if (c.algorithm == Algorithm::Hemas && !c.hybrid) {
        throw InvalidConfig("hybrid: required when algorithm is 'hemas'");
    }
    if (c.hybrid) {
        if (c.hybrid->period < 1) throw InvalidConfig("hybrid.period: must be >= 1");
        for (std::size_t i = 0; i < c.hybrid->operators.size(); ++i) {
            const auto& op = c.hybrid->operators[i];
            const std::string where = "hybrid.operators[" + std::to_string(i) + "].";
            if (op.min_participants < 2) {
                throw InvalidConfig(where + "min_participants: must be >= 2");
            }
            if (op.max_cycles < 0) throw InvalidConfig(where + "max_cycles: must be >= 0");
        }
    }
    if (c.emas.population_size < 1) throw InvalidConfig("emas.population_size: must be >= 1");
    if (c.emas.meeting_rounds < 1) throw InvalidConfig("emas.meeting_rounds: must be >= 1");
}

std::uint64_t config_fingerprint(const ExperimentConfig& c) {
    json j = config_to_json_obj(c);
    j.erase("output_dir");
    const std::string text = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_to_json(const ExperimentConfig& c) {
    return config_to_json_obj(c).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        c.label = j.value("label", "");
        c.algorithm = algorithm_from_name(j.value("algorithm", "emas"));
        c.function = j.value("function", "sphere");
        c.dimension = j.value("dimension", 100);
        c.repetitions = j.value("repetitions", 30);
        c.master_seed = j.value("master_seed", std::uint64_t{1});
        c.eval_multiplier = j.value("eval_multiplier", 100);
        c.output_dir = j.value("output_dir", "");
        if (j.contains("emas")) c.emas = emas_from_json(j.at("emas"));
        if (j.contains("hybrid")) c.hybrid = hybrid_from_json(j.at("hybrid"));
    } catch (const json::exception& e) {
        throw InvalidConfig(std::string("config: ") + e.what());
    }
    if (c.label.empty()) c.label = algorithm_name(c.algorithm);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.label = name;
    if (name == "emas") {
        c.algorithm = Algorithm::Emas;
        return c;
    }
    c.algorithm = Algorithm::Hemas;
    HybridConfig h;
    auto pso = [](const char* rule) {
        return HybridOperatorSpec{HybridAlgorithm::PSO, parse_rule(rule), 2, 3};
    };
    if (name == "hemas1") {
        h.operators = {pso("VE0")};
    } else if (name == "hemas2") {
        h.operators = {pso("ELQ1"), pso("EGQ3")};
    } else if (name == "hemas3") {
        h.operators = {pso("ELQ1"), pso("EGQ3"),
                       HybridOperatorSpec{HybridAlgorithm::GA, parse_rule("VG0.5"), 2, 3}};
    } else {
        throw UnknownPreset(name);
    }
    c.hybrid = std::move(h);
    return c;
}

CampaignResult run_campaign(const ExperimentConfig& config) {
    validate(config);
    const ObjectiveFunction f = make_benchmark(config.function, config.dimension);

    CampaignResult out;
    out.config = config;
    out.seeds.resize(config.repetitions);
    out.runs.resize(config.repetitions);
    for (int i = 0; i < config.repetitions; ++i) {
        out.seeds[i] = RngStream::derive_seed(config.master_seed, static_cast<std::uint64_t>(i));
    }

    const int workers = std::min(worker_count(), config.repetitions);
    std::atomic<int> next{0};
    auto work = [&]() {
        for (int i = next.fetch_add(1); i < config.repetitions; i = next.fetch_add(1)) {
            RngStream rng(out.seeds[i]);
            EvalBudget budget = make_budget(f, config.eval_multiplier);
            out.runs[i] = config.algorithm == Algorithm::Hemas
                              ? run_hemas(config.emas, *config.hybrid, f, budget, rng)
                              : run_emas(config.emas, f, budget, rng);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    if (!config.output_dir.empty()) {
        const fs::path dir(config.output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output dir: " + config.output_dir);

        for (int i = 0; i < config.repetitions; ++i) {
            std::ofstream traj(dir / run_file_name(i));
            if (!traj) throw IoError("cannot write trajectory file in " + config.output_dir);
            traj << "evals,best_fitness\n";
            for (const auto& s : out.runs[i].trajectory) {
                traj << s.evals << ',' << fmt_double(s.best_fitness) << '\n';
            }
        }

        std::ofstream summary(dir / "summary.csv");
        if (!summary) throw IoError("cannot write summary.csv in " + config.output_dir);
        summary << "run,seed,final_best\n";
        for (int i = 0; i < config.repetitions; ++i) {
            summary << i << ',' << out.seeds[i] << ','
                    << fmt_double(out.runs[i].final_best_fitness) << '\n';
        }

        json meta = config_to_json_obj(config);
        meta["fingerprint"] = config_fingerprint(config);
        std::ofstream metafile(dir / "campaign.json");
        if (!metafile) throw IoError("cannot write campaign.json in " + config.output_dir);
        metafile << meta.dump(2) << '\n';
    }
    return out;
}

SampleSet final_fitness_sample(const CampaignResult& campaign) {
    SampleSet s;
    s.label = campaign.config.label;
    for (const auto& r : campaign.runs) s.values.push_back(r.final_best_fitness);
    return s;
}

ComparisonResult compare_campaigns(const std::vector<std::string>& dirs) {
    if (dirs.size() < 2) throw InvalidConfig("compare needs at least 2 campaign dirs");
    std::string function;
    int dimension = 0;
    std::vector<SampleSet> samples;
    for (const auto& d : dirs) {
        const fs::path dir(d);
        const ExperimentConfig c = load_config((dir / "campaign.json").string());
        if (samples.empty()) {
            function = c.function;
            dimension = c.dimension;
        } else if (c.function != function || c.dimension != dimension) {
            throw MixedInstances("campaign " + d + " is " + c.function + "/" +
                                 std::to_string(c.dimension) + ", expected " + function +
                                 "/" + std::to_string(dimension));
        }
        std::ifstream summary(dir / "summary.csv");
        if (!summary) throw IoError("cannot read summary.csv in " + d);
        SampleSet s;
        s.label = c.label;
        std::string line;
        std::getline(summary, line);  // header
        while (std::getline(summary, line)) {
            if (line.empty()) continue;
            const auto last_comma = line.rfind(',');
            s.values.push_back(std::stod(line.substr(last_comma + 1)));
        }
        if (s.values.empty()) throw IoError("summary.csv in " + d + " has no runs");
        samples.push_back(std::move(s));
    }
    return compare_samples(function, dimension, std::move(samples));
}

ComparisonResult compare_samples(const std::string& function, int dimension,
                                 std::vector<SampleSet> samples) {
    ComparisonResult out;
    out.function = function;
    out.dimension = dimension;
    out.report = analyze(samples);
    out.samples = std::move(samples);
    return out;
}

std::string render_comparison(const ComparisonResult& result, double alpha) {
    std::ostringstream os;
    char line[256];
    os << result.function << " " << result.dimension << "D\n\n";
    std::snprintf(line, sizeof(line), "%-24s %12s %12s %12s %12s %12s\n", "group", "mean",
                  "median", "sd", "min", "max");
    os << line;
    for (const auto& s : result.samples) {
        const auto d = describe(s);
        std::snprintf(line, sizeof(line), "%-24s %12.6g %12.6g %12.6g %12.6g %12.6g\n",
                      s.label.c_str(), d.mean, d.median, d.sd, d.min, d.max);
        os << line;
    }
    std::snprintf(line, sizeof(line), "\nKruskal-Wallis: H = %.6g, p = %.6g\n",
                  result.report.omnibus.H, result.report.omnibus.p);
    os << line;
    std::snprintf(line, sizeof(line), "\n%-24s %-24s %10s %14s %14s\n", "group_a", "group_b",
                  "z", "p_unadjusted", "p_bonferroni");
    os << line;
    for (const auto& pr : result.report.pairwise) {
        std::snprintf(line, sizeof(line), "%-24s %-24s %10.4f %14.6e %14.6e%s\n",
                      pr.a.c_str(), pr.b.c_str(), pr.z, pr.p_unadjusted, pr.p_bonferroni,
                      pr.p_unadjusted < alpha ? "  *" : "");
        os << line;
    }
    std::snprintf(line, sizeof(line), "\n(* p < %g, unadjusted)\n", alpha);
    os << line;
    return os.str();
}

void write_comparison_csv(const ComparisonResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write comparison CSV: " + path);
    out << "group_a,group_b,z,p_unadjusted,p_bonferroni\n";
    for (const auto& pr : result.report.pairwise) {
        out << pr.a << ',' << pr.b << ',' << fmt_double(pr.z) << ','
            << fmt_double(pr.p_unadjusted) << ',' << fmt_double(pr.p_bonferroni) << '\n';
    }
}

}  // namespace hemas

#pragma once

#include <string>
#include <vector>

#include "hemas/emas.hpp"

namespace hemas {

enum class RuleMetric { Energy, Fitness, Variety };
enum class RuleRelation { Less, Greater, Equal };
enum class ThresholdKind { Constant, Mean, Q1, Median, Q3 };
enum class RuleScope { PerAgent, Global };

/// Hybridization trigger. Parsed from the compact rule grammar, e.g. "VE0",
/// "ELQ1", "EGQ3", "VG0.5", "EL3", "SGQ3", "EM".
struct RuleSpec {
    RuleMetric metric;
    RuleRelation relation;
    ThresholdKind threshold_kind;
    double constant = 0.0;  // used when threshold_kind == Constant
    RuleScope scope;        // Variety rules are Global, Energy/Fitness PerAgent

    std::string name() const;
};

RuleSpec parse_rule(const std::string& text);

enum class HybridAlgorithm { PSO, GA };

struct HybridOperatorSpec {
    HybridAlgorithm algorithm;
    RuleSpec rule;
    int min_participants = 2;
    int max_cycles = 3;
};

enum class RedistributionScheme { Proportional, Ranking, Tournament };

struct HybridConfig {
    std::vector<HybridOperatorSpec> operators;
    long period = 2000;  // main-loop steps between hybridization checks
    RedistributionScheme redistribution = RedistributionScheme::Proportional;
};

/// Minimum over genes of the population standard deviation (divide by N) of
/// that gene. Zero means at least one gene is identical across all agents.
double diversity(const Population& pop);

enum class Quartile { Q1, Median, Q3 };

/// Linearly interpolated order statistic at h = (n-1)*p.
double quartile(std::vector<double> values, Quartile which);

/// Ids of the agents willing to participate under the rule. Global-scope
/// rules return either every id or none.
std::vector<int> evaluate_rule(const RuleSpec& rule, const Population& pop);

struct HybridParticipant {
    int id;
    Genotype genotype;
    double fitness;
};

/// Global-best PSO over the participants' genotypes; swarm size equals the
/// participant count, velocities start at zero. Returns each particle's
/// personal best, so no participant's fitness degrades. Budget exhaustion
/// truncates the cycles and returns partial results.
std::vector<HybridParticipant> run_pso(const std::vector<HybridParticipant>& participants,
                                       const ObjectiveFunction& f, EvalBudget& budget,
                                       RngStream& rng, int max_cycles);

/// Generational GA (binary tournament, SBX eta=20 p=0.9, polynomial mutation
/// eta=20 p=1/n, single-individual elitism). Final solutions are rank-matched
/// back to ids by input fitness.
std::vector<HybridParticipant> run_ga(const std::vector<HybridParticipant>& participants,
                                      const ObjectiveFunction& f, EvalBudget& budget,
                                      RngStream& rng, int max_cycles);

struct RedistributionShare {
    int id;
    double energy;
};

/// Splits the participants' pooled energy by post-hybridization quality.
/// Only the proportional scheme is implemented; the others throw
/// NotImplemented.
std::vector<RedistributionShare> redistribute_energy(
    const std::vector<HybridParticipant>& participants, double pool,
    RedistributionScheme scheme);

/// One periodic hybridization pass: per operator, evaluate the trigger, run
/// the algorithm on the willing agents, write back genotypes and fitness
/// caches, and redistribute the participants' pooled energy.
void hybridization_step(RunState& state, const HybridConfig& config,
                        const ObjectiveFunction& f, EvalBudget& budget, RngStream& rng);

RunRecord run_hemas(const EmasParams& params, const HybridConfig& config,
                    const ObjectiveFunction& f, EvalBudget& budget, RngStream& rng);

}  // namespace hemas

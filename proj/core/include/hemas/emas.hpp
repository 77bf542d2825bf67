#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hemas/benchmarks.hpp"
#include "hemas/rng.hpp"
#include "hemas/variation.hpp"

namespace hemas {

struct Agent {
    Genotype genotype;
    double fitness;  // cached, minimization
    double energy;
    int id;
};

struct Population {
    std::vector<Agent> agents;
    double total_energy = 0.0;  // conserved for the whole run

    double energy_sum() const;
};

struct EmasParams {
    int population_size = 50;
    double total_energy = 500.0;
    double initial_energy = 10.0;
    double meet_transfer = 1.0;
    // Pairing rounds per main-loop step. Meetings are far cheaper than
    // evaluations, so several rounds happen between reproduction phases; the
    // count sets the selection pressure of the energy economy.
    int meeting_rounds = 20;
    // Extinction guard: when fewer agents than this would survive a death
    // sweep, the best-fitness casualties are retained (with their remaining,
    // possibly zero, energy) so the population can recover.
    int population_floor = 15;
    double death_threshold = 0.0;
    double reproduction_threshold = 20.0;
    // Child always starts at initial_energy: 5.0 from each of two parents,
    // or the full 10.0 from a lone parent.
    SbxParams crossover{5.0, 1.0};
    MutationParams mutation{10.0, 0.01};
    MutationParams strong_mutation{20.0, 1.0};
};

struct TrajectorySample {
    long evals;
    double best_fitness;
};

struct TriggerEvent {
    long step;
    std::string rule;
    int participants;
};

/// One completed run; the unit of statistical analysis.
struct RunRecord {
    std::vector<TrajectorySample> trajectory;
    double final_best_fitness = std::numeric_limits<double>::infinity();
    Genotype best_genotype;
    long evals_used = 0;
    long steps = 0;
    int final_population_size = 0;
    double final_energy_sum = 0.0;
    std::vector<TriggerEvent> triggers;
};

struct RunState {
    Population population;
    long step_index = 0;
    int next_id = 0;
    double best_fitness = std::numeric_limits<double>::infinity();
    Genotype best_genotype;
    std::vector<TrajectorySample> trajectory;
    std::vector<TriggerEvent> triggers;

    /// Folds the current population into the best-so-far pair and appends a
    /// trajectory sample whenever the evaluation count advanced.
    void update_progress(long evals_used);
};

Population create_initial_population(const EmasParams& params, const ObjectiveFunction& f,
                                     EvalBudget& budget, RngStream& rng);

/// Random pairing; within each pair the strictly better-fitness agent takes
/// min(meet_transfer, loser energy) from the other. Ties transfer nothing.
void meet_step(Population& pop, const EmasParams& params, RngStream& rng);

/// Agents at or above the reproduction threshold pair up; each pair funds one
/// SBX+mutation child, an unpaired agent funds one strong-mutation child.
/// Children that cannot be evaluated (budget) are not created.
void repro_step(RunState& state, const EmasParams& params, const ObjectiveFunction& f,
                EvalBudget& budget, RngStream& rng);

/// Removes agents at or below the death threshold, never the last agent.
void dead_step(Population& pop, const EmasParams& params);

RunRecord run_emas(const EmasParams& params, const ObjectiveFunction& f, EvalBudget& budget,
                   RngStream& rng);

}  // namespace hemas

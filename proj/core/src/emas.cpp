#include "hemas/emas.hpp"

#include <algorithm>
#include <numeric>

#include "hemas/errors.hpp"

namespace hemas {

double Population::energy_sum() const {
    double s = 0.0;
    for (const auto& a : agents) s += a.energy;
    return s;
}

void RunState::update_progress(long evals_used) {
    for (const auto& a : population.agents) {
        if (a.fitness < best_fitness) {
            best_fitness = a.fitness;
            best_genotype = a.genotype;
        }
    }
    if (trajectory.empty() || evals_used > trajectory.back().evals) {
        trajectory.push_back({evals_used, best_fitness});
    }
}

Population create_initial_population(const EmasParams& params, const ObjectiveFunction& f,
                                     EvalBudget& budget, RngStream& rng) {
    if (budget.remaining() < params.population_size) throw BudgetExhausted();
    Population pop;
    pop.total_energy = params.total_energy;
    pop.agents.reserve(params.population_size);
    for (int i = 0; i < params.population_size; ++i) {
        Agent a;
        a.genotype.resize(f.dimension);
        for (double& g : a.genotype) g = rng.uniform(f.lower_bound, f.upper_bound);
        a.fitness = evaluate(f, a.genotype, budget);
        a.energy = params.initial_energy;
        a.id = i;
        pop.agents.push_back(std::move(a));
    }
    return pop;
}

void meet_step(Population& pop, const EmasParams& params, RngStream& rng) {
    auto& agents = pop.agents;
    std::vector<std::size_t> order(agents.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(order.begin(), order.end());

    for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
        Agent& a = agents[order[k]];
        Agent& b = agents[order[k + 1]];
        if (a.fitness == b.fitness) continue;
        Agent& winner = a.fitness < b.fitness ? a : b;
        Agent& loser = a.fitness < b.fitness ? b : a;
        const double transfer = std::min(params.meet_transfer, loser.energy);
        winner.energy += transfer;
        loser.energy -= transfer;
    }
}

void repro_step(RunState& state, const EmasParams& params, const ObjectiveFunction& f,
                EvalBudget& budget, RngStream& rng) {
    auto& agents = state.population.agents;
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].energy >= params.reproduction_threshold) eligible.push_back(i);
    }
    if (eligible.empty()) return;
    rng.shuffle(eligible.begin(), eligible.end());

    const double lo = f.lower_bound;
    const double hi = f.upper_bound;
    std::vector<Agent> children;

    std::size_t k = 0;
    for (; k + 1 < eligible.size(); k += 2) {
        if (budget.exhausted()) break;
        Agent& pa = agents[eligible[k]];
        Agent& pb = agents[eligible[k + 1]];
        auto [child_genotype, unused] =
            sbx_crossover(pa.genotype, pb.genotype, params.crossover, lo, hi, rng);
        (void)unused;
        child_genotype = polynomial_mutation(child_genotype, params.mutation, lo, hi, rng);

        Agent child;
        child.fitness = evaluate(f, child_genotype, budget);
        child.genotype = std::move(child_genotype);
        const double share = params.initial_energy / 2.0;
        pa.energy -= share;
        pb.energy -= share;
        child.energy = params.initial_energy;
        child.id = state.next_id++;
        children.push_back(std::move(child));
    }
    if (k < eligible.size() && !budget.exhausted()) {
        Agent& parent = agents[eligible[k]];
        Genotype child_genotype = strong_mutation(parent.genotype, lo, hi, rng);
        Agent child;
        child.fitness = evaluate(f, child_genotype, budget);
        child.genotype = std::move(child_genotype);
        parent.energy -= params.initial_energy;
        child.energy = params.initial_energy;
        child.id = state.next_id++;
        children.push_back(std::move(child));
    }
    for (auto& c : children) agents.push_back(std::move(c));
}

void dead_step(Population& pop, const EmasParams& params) {
    auto& agents = pop.agents;
    std::size_t alive = 0;
    for (const auto& a : agents) alive += a.energy > params.death_threshold;
    const std::size_t floor =
        std::min(agents.size(), static_cast<std::size_t>(std::max(1, params.population_floor)));
    if (alive >= floor) {
        std::erase_if(agents,
                      [&](const Agent& a) { return a.energy <= params.death_threshold; });
        return;
    }
    // Extinction guard: too few survivors, so the best-fitness casualties stay
    // in the population (keeping whatever energy they have left). They cannot
    // reproduce, but they can still win meetings and recover.
    std::stable_sort(agents.begin(), agents.end(), [&](const Agent& a, const Agent& b) {
        const bool a_alive = a.energy > params.death_threshold;
        const bool b_alive = b.energy > params.death_threshold;
        if (a_alive != b_alive) return a_alive;
        return a.fitness < b.fitness;
    });
    agents.resize(floor);
}

}  // namespace hemas

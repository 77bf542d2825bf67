#include "hemas/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include "hemas/errors.hpp"

namespace hemas {

namespace {

constexpr double kEqualEps = 1e-12;

// PSO coefficients: constriction-equivalent standard values.
constexpr double kPsoInertia = 0.7298;
constexpr double kPsoCognitive = 1.49618;
constexpr double kPsoSocial = 1.49618;

// A run that stops producing evaluations cannot hit the budget stopping
// condition; bail out instead of spinning.
constexpr long kStallStepLimit = 200000;

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

std::string RuleSpec::name() const {
    std::string out;
    switch (metric) {
        case RuleMetric::Variety: out += 'V'; break;
        case RuleMetric::Energy: out += 'E'; break;
        case RuleMetric::Fitness: out += 'S'; break;
    }
    switch (relation) {
        case RuleRelation::Less: out += 'L'; break;
        case RuleRelation::Greater: out += 'G'; break;
        case RuleRelation::Equal: out += 'E'; break;
    }
    switch (threshold_kind) {
        case ThresholdKind::Mean: out += 'M'; break;
        case ThresholdKind::Q1: out += "Q1"; break;
        case ThresholdKind::Median: out += "Q2"; break;
        case ThresholdKind::Q3: out += "Q3"; break;
        case ThresholdKind::Constant: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", constant);
            out += buf;
            break;
        }
    }
    return out;
}

RuleSpec parse_rule(const std::string& text) {
    if (text.size() < 3) throw InvalidConfig("rule too short: '" + text + "'");
    RuleSpec rule;
    switch (text[0]) {
        case 'V': rule.metric = RuleMetric::Variety; break;
        case 'E': rule.metric = RuleMetric::Energy; break;
        case 'S': rule.metric = RuleMetric::Fitness; break;
        default: throw InvalidConfig("rule metric must be V, E or S: '" + text + "'");
    }
    switch (text[1]) {
        case 'L': rule.relation = RuleRelation::Less; break;
        case 'G': rule.relation = RuleRelation::Greater; break;
        case 'E': rule.relation = RuleRelation::Equal; break;
        default: throw InvalidConfig("rule relation must be L, G or E: '" + text + "'");
    }
    const std::string tail = text.substr(2);
    if (tail == "M") {
        rule.threshold_kind = ThresholdKind::Mean;
    } else if (tail == "Q1") {
        rule.threshold_kind = ThresholdKind::Q1;
    } else if (tail == "Q2") {
        rule.threshold_kind = ThresholdKind::Median;
    } else if (tail == "Q3") {
        rule.threshold_kind = ThresholdKind::Q3;
    } else {
        rule.threshold_kind = ThresholdKind::Constant;
        std::size_t consumed = 0;
        try {
            rule.constant = std::stod(tail, &consumed);
        } catch (const std::exception&) {
            throw InvalidConfig("bad rule threshold: '" + text + "'");
        }
        if (consumed != tail.size()) throw InvalidConfig("bad rule threshold: '" + text + "'");
    }
    rule.scope = rule.metric == RuleMetric::Variety ? RuleScope::Global : RuleScope::PerAgent;
    if (rule.metric == RuleMetric::Variety &&
        rule.threshold_kind != ThresholdKind::Constant) {
        throw InvalidConfig("variety rules take a constant threshold: '" + text + "'");
    }
    return rule;
}

double diversity(const Population& pop) {
    const auto& agents = pop.agents;
    if (agents.empty()) throw EmptyInput("diversity of empty population");
    const std::size_t n_genes = agents.front().genotype.size();
    const double count = static_cast<double>(agents.size());
    double min_sd = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < n_genes; ++g) {
        double mean = 0.0;
        for (const auto& a : agents) mean += a.genotype[g];
        mean /= count;
        double var = 0.0;
        for (const auto& a : agents) {
            const double d = a.genotype[g] - mean;
            var += d * d;
        }
        min_sd = std::min(min_sd, std::sqrt(var / count));
    }
    return min_sd;
}

double quartile(std::vector<double> values, Quartile which) {
    if (values.empty()) throw EmptyInput("quartile of empty list");
    std::sort(values.begin(), values.end());
    double p = 0.5;
    if (which == Quartile::Q1) p = 0.25;
    if (which == Quartile::Q3) p = 0.75;
    const double h = static_cast<double>(values.size() - 1) * p;
    const auto lower = static_cast<std::size_t>(h);
    if (lower + 1 >= values.size()) return values[lower];
    const double frac = h - static_cast<double>(lower);
    return values[lower] + frac * (values[lower + 1] - values[lower]);
}

namespace {

bool relation_holds(double value, RuleRelation relation, double threshold) {
    switch (relation) {
        case RuleRelation::Less: return value < threshold;
        case RuleRelation::Greater: return value > threshold;
        case RuleRelation::Equal: return std::abs(value - threshold) <= kEqualEps;
    }
    return false;
}

double resolve_threshold(const RuleSpec& rule, const std::vector<double>& metric_values) {
    switch (rule.threshold_kind) {
        case ThresholdKind::Constant: return rule.constant;
        case ThresholdKind::Mean: {
            double s = 0.0;
            for (double v : metric_values) s += v;
            return s / static_cast<double>(metric_values.size());
        }
        case ThresholdKind::Q1: return quartile(metric_values, Quartile::Q1);
        case ThresholdKind::Median: return quartile(metric_values, Quartile::Median);
        case ThresholdKind::Q3: return quartile(metric_values, Quartile::Q3);
    }
    return 0.0;
}

}  // namespace

std::vector<int> evaluate_rule(const RuleSpec& rule, const Population& pop) {
    if (pop.agents.empty()) throw EmptyInput("evaluate_rule on empty population");
    std::vector<int> ids;

    if (rule.scope == RuleScope::Global) {
        const double metric = diversity(pop);
        if (relation_holds(metric, rule.relation, rule.constant)) {
            for (const auto& a : pop.agents) ids.push_back(a.id);
        }
        return ids;
    }

    std::vector<double> metric_values;
    metric_values.reserve(pop.agents.size());
    for (const auto& a : pop.agents) {
        metric_values.push_back(rule.metric == RuleMetric::Energy ? a.energy : a.fitness);
    }
    const double threshold = resolve_threshold(rule, metric_values);
    for (std::size_t i = 0; i < pop.agents.size(); ++i) {
        if (relation_holds(metric_values[i], rule.relation, threshold)) {
            ids.push_back(pop.agents[i].id);
        }
    }
    return ids;
}

std::vector<HybridParticipant> run_pso(const std::vector<HybridParticipant>& participants,
                                       const ObjectiveFunction& f, EvalBudget& budget,
                                       RngStream& rng, int max_cycles) {
    if (participants.size() < 2) {
        throw TooFewParticipants("PSO needs at least 2 participants");
    }
    const std::size_t k = participants.size();
    const std::size_t n = static_cast<std::size_t>(f.dimension);
    const double range = f.upper_bound - f.lower_bound;

    std::vector<Genotype> position(k);
    std::vector<Genotype> velocity(k, Genotype(n, 0.0));
    std::vector<HybridParticipant> pbest = participants;
    for (std::size_t i = 0; i < k; ++i) position[i] = participants[i].genotype;

    std::size_t gbest = 0;
    for (std::size_t i = 1; i < k; ++i) {
        if (pbest[i].fitness < pbest[gbest].fitness) gbest = i;
    }

    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        for (std::size_t i = 0; i < k; ++i) {
            if (budget.exhausted()) return pbest;
            for (std::size_t g = 0; g < n; ++g) {
                const double r1 = rng.next_double();
                const double r2 = rng.next_double();
                double v = kPsoInertia * velocity[i][g] +
                           kPsoCognitive * r1 * (pbest[i].genotype[g] - position[i][g]) +
                           kPsoSocial * r2 * (pbest[gbest].genotype[g] - position[i][g]);
                v = clamp(v, -range, range);
                velocity[i][g] = v;
                position[i][g] = clamp(position[i][g] + v, f.lower_bound, f.upper_bound);
            }
            const double fit = evaluate(f, position[i], budget);
            if (fit < pbest[i].fitness) {
                pbest[i].fitness = fit;
                pbest[i].genotype = position[i];
            }
        }
        // Synchronous topology: the global best advances between cycles.
        for (std::size_t i = 0; i < k; ++i) {
            if (pbest[i].fitness < pbest[gbest].fitness) gbest = i;
        }
    }
    return pbest;
}

namespace {

std::vector<HybridParticipant> rank_match(const std::vector<HybridParticipant>& inputs,
                                          std::vector<HybridParticipant> finals) {
    std::vector<std::size_t> input_order(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) input_order[i] = i;
    std::stable_sort(input_order.begin(), input_order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return inputs[a].fitness < inputs[b].fitness;
                     });
    std::stable_sort(finals.begin(), finals.end(),
                     [](const HybridParticipant& a, const HybridParticipant& b) {
                         return a.fitness < b.fitness;
                     });
    std::vector<HybridParticipant> out(inputs.size());
    for (std::size_t rank = 0; rank < finals.size(); ++rank) {
        out[input_order[rank]] = std::move(finals[rank]);
        out[input_order[rank]].id = inputs[input_order[rank]].id;
    }
    return out;
}

}  // namespace

std::vector<HybridParticipant> run_ga(const std::vector<HybridParticipant>& participants,
                                      const ObjectiveFunction& f, EvalBudget& budget,
                                      RngStream& rng, int max_cycles) {
    if (participants.size() < 2) {
        throw TooFewParticipants("GA needs at least 2 participants");
    }
    const std::size_t k = participants.size();
    const SbxParams crossover{20.0, 0.9};
    const MutationParams mutation{20.0, 1.0 / static_cast<double>(f.dimension)};

    std::vector<HybridParticipant> pop = participants;

    auto tournament = [&]() -> const HybridParticipant& {
        const auto& a = pop[rng.index_below(k)];
        const auto& b = pop[rng.index_below(k)];
        return a.fitness <= b.fitness ? a : b;
    };

    for (int gen = 0; gen < max_cycles; ++gen) {
        std::vector<HybridParticipant> offspring;
        offspring.reserve(k);
        bool truncated = false;
        while (offspring.size() < k) {
            if (budget.exhausted()) {
                truncated = true;
                break;
            }
            const auto& pa = tournament();
            const auto& pb = tournament();
            auto children = sbx_crossover(pa.genotype, pb.genotype, crossover,
                                          f.lower_bound, f.upper_bound, rng);
            for (Genotype* child : {&children.first, &children.second}) {
                if (offspring.size() >= k) break;
                if (budget.exhausted()) {
                    truncated = true;
                    break;
                }
                Genotype mutated = polynomial_mutation(*child, mutation, f.lower_bound,
                                                       f.upper_bound, rng);
                HybridParticipant c;
                c.id = -1;
                c.fitness = evaluate(f, mutated, budget);
                c.genotype = std::move(mutated);
                offspring.push_back(std::move(c));
            }
        }
        if (truncated) {
            // Keep the best k of old population plus whatever got evaluated.
            for (auto& o : offspring) pop.push_back(std::move(o));
            std::stable_sort(pop.begin(), pop.end(),
                             [](const HybridParticipant& a, const HybridParticipant& b) {
                                 return a.fitness < b.fitness;
                             });
            pop.resize(k);
            break;
        }
        // Single-individual elitism.
        auto prev_best = std::min_element(pop.begin(), pop.end(),
                                          [](const HybridParticipant& a,
                                             const HybridParticipant& b) {
                                              return a.fitness < b.fitness;
                                          });
        auto worst_child = std::max_element(offspring.begin(), offspring.end(),
                                            [](const HybridParticipant& a,
                                               const HybridParticipant& b) {
                                                return a.fitness < b.fitness;
                                            });
        if (prev_best->fitness < worst_child->fitness) *worst_child = *prev_best;
        pop = std::move(offspring);
    }
    return rank_match(participants, std::move(pop));
}

std::vector<RedistributionShare> redistribute_energy(
    const std::vector<HybridParticipant>& participants, double pool,
    RedistributionScheme scheme) {
    if (participants.empty()) throw EmptyInput("redistribute_energy without participants");
    for (const auto& p : participants) {
        if (!std::isfinite(p.fitness)) {
            throw NonFiniteFitness("non-finite fitness in energy redistribution");
        }
    }
    if (scheme != RedistributionScheme::Proportional) {
        throw NotImplemented("only proportional energy redistribution is implemented");
    }
    double worst = participants.front().fitness;
    for (const auto& p : participants) worst = std::max(worst, p.fitness);
    const double eps = 1e-9 * (1.0 + std::abs(worst));

    double total_weight = 0.0;
    for (const auto& p : participants) total_weight += worst - p.fitness + eps;

    std::vector<RedistributionShare> shares;
    shares.reserve(participants.size());
    for (const auto& p : participants) {
        shares.push_back({p.id, pool * (worst - p.fitness + eps) / total_weight});
    }
    return shares;
}

void hybridization_step(RunState& state, const HybridConfig& config,
                        const ObjectiveFunction& f, EvalBudget& budget, RngStream& rng) {
    auto& agents = state.population.agents;
    for (const auto& op : config.operators) {
        const std::vector<int> ids = evaluate_rule(op.rule, state.population);
        if (static_cast<int>(ids.size()) < op.min_participants) continue;

        std::unordered_map<int, std::size_t> index_of;
        index_of.reserve(agents.size());
        for (std::size_t i = 0; i < agents.size(); ++i) index_of.emplace(agents[i].id, i);

        std::vector<HybridParticipant> participants;
        participants.reserve(ids.size());
        double pool = 0.0;
        for (int id : ids) {
            const Agent& a = agents[index_of.at(id)];
            participants.push_back({a.id, a.genotype, a.fitness});
            pool += a.energy;
        }

        std::vector<HybridParticipant> results =
            op.algorithm == HybridAlgorithm::PSO
                ? run_pso(participants, f, budget, rng, op.max_cycles)
                : run_ga(participants, f, budget, rng, op.max_cycles);
        const auto shares = redistribute_energy(results, pool, config.redistribution);

        for (auto& r : results) {
            Agent& a = agents[index_of.at(r.id)];
            a.genotype = std::move(r.genotype);
            a.fitness = r.fitness;
        }
        for (const auto& s : shares) agents[index_of.at(s.id)].energy = s.energy;

        state.triggers.push_back(
            {state.step_index, op.rule.name(), static_cast<int>(ids.size())});
    }
}

namespace {

RunRecord run_loop(const EmasParams& params, const HybridConfig* hybrid,
                   const ObjectiveFunction& f, EvalBudget& budget, RngStream& rng) {
    RunState state;
    state.population = create_initial_population(params, f, budget, rng);
    state.next_id = params.population_size;
    state.update_progress(budget.used);

    long stalled_steps = 0;
    long periods_fired = 0;
    while (!budget.exhausted()) {
        const long used_before = budget.used;
        // One step per meeting: the hybridization period is counted in meeting
        // events, the granularity the agents actually live at.
        for (int round = 0; round < params.meeting_rounds; ++round) {
            state.step_index +=
                static_cast<long>(state.population.agents.size() / 2);
            meet_step(state.population, params, rng);
        }
        repro_step(state, params, f, budget, rng);
        dead_step(state.population, params);
        if (hybrid != nullptr && !hybrid->operators.empty() && hybrid->period > 0 &&
            state.step_index / hybrid->period > periods_fired) {
            periods_fired = state.step_index / hybrid->period;
            hybridization_step(state, *hybrid, f, budget, rng);
        }
        state.update_progress(budget.used);

        stalled_steps = budget.used == used_before ? stalled_steps + 1 : 0;
        if (stalled_steps >= kStallStepLimit) break;
    }

    RunRecord record;
    record.trajectory = std::move(state.trajectory);
    record.final_best_fitness = state.best_fitness;
    record.best_genotype = std::move(state.best_genotype);
    record.evals_used = budget.used;
    record.steps = state.step_index;
    record.final_population_size = static_cast<int>(state.population.agents.size());
    record.final_energy_sum = state.population.energy_sum();
    record.triggers = std::move(state.triggers);
    return record;
}

}  // namespace

RunRecord run_emas(const EmasParams& params, const ObjectiveFunction& f, EvalBudget& budget,
                   RngStream& rng) {
    return run_loop(params, nullptr, f, budget, rng);
}

RunRecord run_hemas(const EmasParams& params, const HybridConfig& config,
                    const ObjectiveFunction& f, EvalBudget& budget, RngStream& rng) {
    return run_loop(params, &config, f, budget, rng);
}

}  // namespace hemas

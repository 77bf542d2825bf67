#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hemas {

using Genotype = std::vector<double>;

enum class BenchmarkId { Sphere, Ackley, Griewank, Rastrigin };

std::string benchmark_name(BenchmarkId id);
BenchmarkId benchmark_from_name(const std::string& name);

/// Immutable continuous minimization problem on a box domain. Each supported
/// function has its global minimum 0 at the origin.
struct ObjectiveFunction {
    BenchmarkId id;
    int dimension;
    double lower_bound;
    double upper_bound;

    /// Raw function value, no budget accounting. Deterministic.
    double value(std::span<const double> x) const;
};

/// Counts fitness evaluations against the hard stopping limit.
struct EvalBudget {
    long used = 0;
    long limit = 0;

    bool exhausted() const { return used >= limit; }
    long remaining() const { return limit - used; }
};

/// Budgeted evaluation: the only path that counts toward the stopping
/// criterion. Throws BudgetExhausted once used == limit; refused requests do
/// not consume budget.
double evaluate(const ObjectiveFunction& f, std::span<const double> x, EvalBudget& budget);

ObjectiveFunction make_benchmark(BenchmarkId id, int dimension);
ObjectiveFunction make_benchmark(const std::string& name, int dimension);

/// Budget limit for one run: eval_multiplier * dimension (100x by default).
EvalBudget make_budget(const ObjectiveFunction& f, int eval_multiplier = 100);

}  // namespace hemas

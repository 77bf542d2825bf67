#include "hemas/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include "hemas/errors.hpp"

namespace hemas {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sphere(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double ackley(std::span<const double> x) {
    const auto n = static_cast<double>(x.size());
    double sq = 0.0;
    double cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(kTwoPi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
           std::numbers::e;
}

double griewank(std::span<const double> x) {
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i] / 4000.0;
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return 1.0 + sum - prod;
}

double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(kTwoPi * v);
    return 10.0 * static_cast<double>(x.size()) + s;
}

}  // namespace

std::string benchmark_name(BenchmarkId id) {
    switch (id) {
        case BenchmarkId::Sphere: return "sphere";
        case BenchmarkId::Ackley: return "ackley";
        case BenchmarkId::Griewank: return "griewank";
        case BenchmarkId::Rastrigin: return "rastrigin";
    }
    throw UnknownFunction("<invalid id>");
}

BenchmarkId benchmark_from_name(const std::string& name) {
    if (name == "sphere") return BenchmarkId::Sphere;
    if (name == "ackley") return BenchmarkId::Ackley;
    if (name == "griewank") return BenchmarkId::Griewank;
    if (name == "rastrigin") return BenchmarkId::Rastrigin;
    throw UnknownFunction(name);
}

double ObjectiveFunction::value(std::span<const double> x) const {
    switch (id) {
        case BenchmarkId::Sphere: return sphere(x);
        case BenchmarkId::Ackley: return ackley(x);
        case BenchmarkId::Griewank: return griewank(x);
        case BenchmarkId::Rastrigin: return rastrigin(x);
    }
    throw UnknownFunction("<invalid id>");
}

double evaluate(const ObjectiveFunction& f, std::span<const double> x, EvalBudget& budget) {
    if (static_cast<int>(x.size()) != f.dimension) {
        throw DimensionMismatch("genotype length " + std::to_string(x.size()) +
                                " != dimension " + std::to_string(f.dimension));
    }
    for (double v : x) {
        if (v < f.lower_bound || v > f.upper_bound) {
            throw OutOfBounds("gene " + std::to_string(v) + " outside [" +
                              std::to_string(f.lower_bound) + ", " +
                              std::to_string(f.upper_bound) + "]");
        }
    }
    if (budget.exhausted()) throw BudgetExhausted();
    ++budget.used;
    return f.value(x);
}

ObjectiveFunction make_benchmark(BenchmarkId id, int dimension) {
    if (dimension < 1) throw InvalidConfig("dimension must be >= 1");
    double bound = 0.0;
    switch (id) {
        case BenchmarkId::Sphere: bound = 5.12; break;
        case BenchmarkId::Ackley: bound = 32.768; break;
        case BenchmarkId::Griewank: bound = 600.0; break;
        case BenchmarkId::Rastrigin: bound = 5.12; break;
    }
    return ObjectiveFunction{id, dimension, -bound, bound};
}

ObjectiveFunction make_benchmark(const std::string& name, int dimension) {
    return make_benchmark(benchmark_from_name(name), dimension);
}

EvalBudget make_budget(const ObjectiveFunction& f, int eval_multiplier) {
    if (eval_multiplier < 1) throw InvalidConfig("eval_multiplier must be >= 1");
    return EvalBudget{0, static_cast<long>(eval_multiplier) * f.dimension};
}

}  // namespace hemas

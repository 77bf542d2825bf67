#include "hemas/variation.hpp"

#include <algorithm>
#include <cmath>

#include "hemas/errors.hpp"

namespace hemas {

namespace {

constexpr double kGeneEps = 1e-14;  // parents closer than this are copied as-is

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

double sbx_spread(double u, double eta_c) {
    if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (eta_c + 1.0));
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
}

double polynomial_delta(double u, double eta_m, double d1, double d2) {
    const double mpow = eta_m + 1.0;
    if (u < 0.5) {
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, mpow);
        return std::pow(val, 1.0 / mpow) - 1.0;
    }
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, mpow);
    return 1.0 - std::pow(val, 1.0 / mpow);
}

std::pair<Genotype, Genotype> sbx_crossover(const Genotype& p1, const Genotype& p2,
                                            const SbxParams& params, double lo, double hi,
                                            RngStream& rng) {
    if (p1.size() != p2.size()) {
        throw DimensionMismatch("sbx_crossover: parent lengths differ");
    }
    Genotype c1 = p1;
    Genotype c2 = p2;
    if (rng.next_double() >= params.probability) return {std::move(c1), std::move(c2)};

    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.next_double() >= 0.5) continue;
        if (std::abs(p1[i] - p2[i]) < kGeneEps) continue;
        const double beta = sbx_spread(rng.next_double(), params.distribution_index);
        c1[i] = clamp(0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]), lo, hi);
        c2[i] = clamp(0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]), lo, hi);
    }
    return {std::move(c1), std::move(c2)};
}

Genotype polynomial_mutation(const Genotype& x, const MutationParams& params, double lo,
                             double hi, RngStream& rng) {
    Genotype out = x;
    const double range = hi - lo;
    for (double& gene : out) {
        if (rng.next_double() >= params.probability) continue;
        const double d1 = (gene - lo) / range;
        const double d2 = (hi - gene) / range;
        const double delta =
            polynomial_delta(rng.next_double(), params.distribution_index, d1, d2);
        gene = clamp(gene + delta * range, lo, hi);
    }
    return out;
}

Genotype strong_mutation(const Genotype& x, double lo, double hi, RngStream& rng) {
    return polynomial_mutation(x, MutationParams{20.0, 1.0}, lo, hi, rng);
}

}  // namespace hemas

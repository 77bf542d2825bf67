#pragma once

#include <utility>

#include "hemas/benchmarks.hpp"
#include "hemas/rng.hpp"

namespace hemas {

struct SbxParams {
    double distribution_index;  // eta_c
    double probability;         // whole-operator gate
};

struct MutationParams {
    double distribution_index;  // eta_m
    double probability;         // per-gene gate
};

/// Spread factor of the SBX distribution for draw u in [0,1).
/// u = 0.5 is the identity point (beta_q = 1).
double sbx_spread(double u, double eta_c);

/// Bounded polynomial-mutation perturbation (fraction of the gene range).
/// d1 = (x - lo)/(hi - lo), d2 = (hi - x)/(hi - lo). Zero at u = 0.5.
double polynomial_delta(double u, double eta_m, double d1, double d2);

/// Simulated binary crossover. Per-gene gate of 0.5 on top of the
/// whole-operator probability; children clamped to the box.
std::pair<Genotype, Genotype> sbx_crossover(const Genotype& p1, const Genotype& p2,
                                            const SbxParams& params, double lo, double hi,
                                            RngStream& rng);

Genotype polynomial_mutation(const Genotype& x, const MutationParams& params, double lo,
                             double hi, RngStream& rng);

/// Polynomial mutation with eta_m = 20 applied to every gene; used for
/// lone-parent reproduction.
Genotype strong_mutation(const Genotype& x, double lo, double hi, RngStream& rng);

}  // namespace hemas

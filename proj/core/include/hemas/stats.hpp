#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hemas {

struct SampleSet {
    std::string label;
    std::vector<double> values;
};

struct DescriptiveStats {
    double mean;
    double median;
    double sd;  // sample standard deviation (n-1); 0 for a single value
    double min;
    double max;
};

DescriptiveStats describe(const SampleSet& s);

/// Mid-ranks (1-based, ties averaged) of the input values.
std::vector<double> midranks(std::span<const double> values);

struct KruskalWallisResult {
    double H;  // tie-corrected statistic
    double p;  // chi-square upper tail, k-1 dof
};

KruskalWallisResult kruskal_wallis(const std::vector<SampleSet>& groups);

struct DunnPair {
    std::string a;
    std::string b;
    double z;
    double p_unadjusted;
    double p_bonferroni;
};

/// Post-hoc pairwise comparisons on the pooled mid-ranks, with tie-corrected
/// variance. Two-sided p-values, unadjusted and Bonferroni-adjusted.
std::vector<DunnPair> dunn_test(const std::vector<SampleSet>& groups);

struct TestReport {
    KruskalWallisResult omnibus;
    std::vector<DunnPair> pairwise;
};

TestReport analyze(const std::vector<SampleSet>& groups);

/// Upper-tail probability of the chi-square distribution (regularized
/// incomplete gamma; absolute error ~1e-12).
double chi_squared_sf(double x, int dof);

/// Two-sided normal tail probability for statistic z.
double normal_two_sided_p(double z);

}  // namespace hemas

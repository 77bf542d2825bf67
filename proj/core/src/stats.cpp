#include "hemas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hemas/errors.hpp"

namespace hemas {

namespace {

// Regularized incomplete gamma Q(a, x) via series / Lentz continued fraction.
double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q domain");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // Series for P(a, x).
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // Continued fraction for Q(a, x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - lg);
}

double tie_sum(const std::vector<double>& sorted) {
    // Sum of t^3 - t over tie groups.
    double total = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        total += t * t * t - t;
        i = j;
    }
    return total;
}

void check_groups(const std::vector<SampleSet>& groups) {
    if (groups.size() < 2) throw InvalidConfig("need at least 2 groups");
    for (const auto& g : groups) {
        if (g.values.empty()) throw EmptyInput("empty sample set: " + g.label);
        for (double v : g.values) {
            if (!std::isfinite(v)) throw NonFiniteFitness("non-finite sample in " + g.label);
        }
    }
}

}  // namespace

DescriptiveStats describe(const SampleSet& s) {
    if (s.values.empty()) throw EmptyInput("describe of empty sample set");
    std::vector<double> sorted = s.values;
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                        static_cast<double>(n);
    const double median = n % 2 == 1 ? sorted[n / 2]
                                     : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double sd = 0.0;
    if (n > 1) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - mean) * (v - mean);
        sd = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return {mean, median, sd, sorted.front(), sorted.back()};
}

std::vector<double> midranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
    return ranks;
}

namespace {

struct PooledRanks {
    std::vector<double> mean_rank;  // per group
    std::vector<double> sorted_pool;
    double n_total;
};

PooledRanks pooled_ranks(const std::vector<SampleSet>& groups) {
    std::vector<double> pool;
    for (const auto& g : groups) pool.insert(pool.end(), g.values.begin(), g.values.end());
    const auto ranks = midranks(pool);

    PooledRanks out;
    out.n_total = static_cast<double>(pool.size());
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double sum = 0.0;
        for (std::size_t i = 0; i < g.values.size(); ++i) sum += ranks[offset + i];
        out.mean_rank.push_back(sum / static_cast<double>(g.values.size()));
        offset += g.values.size();
    }
    out.sorted_pool = std::move(pool);
    std::sort(out.sorted_pool.begin(), out.sorted_pool.end());
    return out;
}

}  // namespace

KruskalWallisResult kruskal_wallis(const std::vector<SampleSet>& groups) {
    check_groups(groups);
    const auto pr = pooled_ranks(groups);
    const double n = pr.n_total;

    double h = 0.0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const double ni = static_cast<double>(groups[i].values.size());
        const double dev = pr.mean_rank[i] - (n + 1.0) / 2.0;
        h += ni * dev * dev;
    }
    h *= 12.0 / (n * (n + 1.0));

    const double ties = tie_sum(pr.sorted_pool);
    const double correction = 1.0 - ties / (n * n * n - n);
    if (correction <= 0.0) return {0.0, 1.0};  // all pooled values identical
    h /= correction;

    const int dof = static_cast<int>(groups.size()) - 1;
    return {h, chi_squared_sf(h, dof)};
}

std::vector<DunnPair> dunn_test(const std::vector<SampleSet>& groups) {
    check_groups(groups);
    const auto pr = pooled_ranks(groups);
    const double n = pr.n_total;
    const double ties = tie_sum(pr.sorted_pool);
    const double sigma2 = n * (n + 1.0) / 12.0 - ties / (12.0 * (n - 1.0));

    const std::size_t k = groups.size();
    const double comparisons = static_cast<double>(k * (k - 1) / 2);
    std::vector<DunnPair> out;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double ni = static_cast<double>(groups[i].values.size());
            const double nj = static_cast<double>(groups[j].values.size());
            double z = 0.0;
            if (sigma2 > 0.0) {
                z = (pr.mean_rank[i] - pr.mean_rank[j]) /
                    std::sqrt(sigma2 * (1.0 / ni + 1.0 / nj));
            }
            const double p = normal_two_sided_p(z);
            out.push_back({groups[i].label, groups[j].label, z, p,
                           std::min(1.0, p * comparisons)});
        }
    }
    return out;
}

TestReport analyze(const std::vector<SampleSet>& groups) {
    return {kruskal_wallis(groups), dunn_test(groups)};
}

double chi_squared_sf(double x, int dof) {
    if (dof < 1) throw std::domain_error("chi_squared_sf dof");
    if (x <= 0.0) return 1.0;
    return gamma_q(static_cast<double>(dof) / 2.0, x / 2.0);
}

double normal_two_sided_p(double z) {
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace hemas

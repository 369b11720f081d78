#pragma once

#include <span>

namespace reprint::stats {

struct ShapiroWilk {
    double w = 0.0;
    double p = 0.0;
};

/// Shapiro-Wilk W and p-value (Royston's approximation, exact p for n = 3).
/// Requires 3 <= n <= 5000. Throws StatsError for n < 3, n > 5000 or zero range.
ShapiroWilk shapiro_wilk(std::span<const double> samples);

/// Passes when the Shapiro-Wilk p-value is at least alpha. Zero-variance samples fail.
/// Throws StatsError for n < 3.
bool normality_test(std::span<const double> samples, double alpha = 0.05);

struct AnovaResult {
    double f = 0.0;
    double p = 1.0;
    double df_between = 1.0;
    double df_within = 0.0;
};

/// One-way ANOVA for two groups: F = MS_between / MS_within with df (1, n_a + n_b - 2),
/// p from the F survival function. Throws StatsError when a group has fewer than two
/// samples or the within-group variance is zero.
AnovaResult anova_f(std::span<const double> group_a, std::span<const double> group_b);

/// P(X > f) for X ~ F(df1, df2).
double f_survival(double f, double df1, double df2);

}  // namespace reprint::stats

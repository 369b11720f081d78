#include "reprint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "reprint/error.hpp"

namespace reprint::stats {

namespace {

// c[0] + c[1] x + ... + c[n-1] x^(n-1)
double poly(const double* c, int n, double x) {
    double result = c[0];
    if (n > 1) {
        double p = x * c[n - 1];
        for (int j = n - 2; j > 0; --j) p = (p + c[j]) * x;
        result += p;
    }
    return result;
}

double normal_quantile(double p) { return boost::math::quantile(boost::math::normal(), p); }

double normal_upper_tail(double x, double mean, double sd) {
    return 0.5 * std::erfc((x - mean) / (sd * std::sqrt(2.0)));
}

}  // namespace

ShapiroWilk shapiro_wilk(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 3) throw StatsError("shapiro_wilk: need at least 3 samples");
    if (n > 5000) throw StatsError("shapiro_wilk: more than 5000 samples");

    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());

    static constexpr double small = 1e-19;
    static constexpr double g[2] = {-2.273, 0.459};
    static constexpr double c1[6] = {0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
    static constexpr double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    static constexpr double c3[4] = {0.544, -0.39978, 0.025054, -6.714e-4};
    static constexpr double c4[4] = {1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr double c5[4] = {-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr double c6[3] = {-0.4803, -0.082676, 0.0030302};

    // Coefficients a[1..n/2], 1-based as in the published algorithm.
    const int half = n / 2;
    std::vector<double> a(static_cast<std::size_t>(half) + 1, 0.0);
    const double an = n;
    if (n == 3) {
        a[1] = std::sqrt(0.5);
    } else {
        const double an25 = an + 0.25;
        double summ2 = 0.0;
        for (int i = 1; i <= half; ++i) {
            a[i] = normal_quantile((i - 0.375) / an25);
            summ2 += a[i] * a[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = poly(c1, 6, rsn) - a[1] / ssumm2;

        int i1;
        double fac;
        if (n > 5) {
            i1 = 3;
            const double a2 = -a[2] / ssumm2 + poly(c2, 6, rsn);
            fac = std::sqrt((summ2 - 2.0 * (a[1] * a[1]) - 2.0 * (a[2] * a[2])) /
                            (1.0 - 2.0 * (a1 * a1) - 2.0 * (a2 * a2)));
            a[2] = a2;
        } else {
            i1 = 2;
            fac = std::sqrt((summ2 - 2.0 * (a[1] * a[1])) / (1.0 - 2.0 * (a1 * a1)));
        }
        a[1] = a1;
        for (int i = i1; i <= half; ++i) a[i] /= -fac;
    }

    const double range = x[n - 1] - x[0];
    if (range < small) throw StatsError("shapiro_wilk: zero range");

    double sx = 0.0;
    for (double v : x) sx += v / range;
    sx /= an;
    // The coefficient vector is antisymmetric, so its mean is zero up to rounding.
    double sa = 0.0;
    for (int i = 0, j = n - 1; i < n; ++i, --j) {
        if (i != j) sa += (i - j > 0 ? 1.0 : -1.0) * a[1 + std::min(i, j)];
    }
    sa /= an;

    double ssa = 0.0, ssx = 0.0, sax = 0.0;
    for (int i = 0, j = n - 1; i < n; ++i, --j) {
        const double asa = (i != j) ? (i - j > 0 ? 1.0 : -1.0) * a[1 + std::min(i, j)] - sa : -sa;
        const double xsx = x[i] / range - sx;
        ssa += asa * asa;
        ssx += xsx * xsx;
        sax += asa * xsx;
    }

    // w1 = 1 - W, computed this way to limit rounding when W is close to 1.
    const double ssassx = std::sqrt(ssa * ssx);
    const double w1 = (ssassx - sax) * (ssassx + sax) / (ssa * ssx);
    ShapiroWilk result;
    result.w = 1.0 - w1;

    if (n == 3) {
        constexpr double pi6 = 1.90985931710274;   // 6 / pi
        constexpr double stqr = 1.04719755119660;  // pi / 3
        result.p = std::max(0.0, pi6 * (std::asin(std::sqrt(result.w)) - stqr));
        return result;
    }

    double y = std::log(w1);
    const double lx = std::log(an);
    double m, s;
    if (n <= 11) {
        const double gamma = poly(g, 2, an);
        if (y >= gamma) {
            result.p = 1e-99;
            return result;
        }
        y = -std::log(gamma - y);
        m = poly(c3, 4, an);
        s = std::exp(poly(c4, 4, an));
    } else {
        m = poly(c5, 4, lx);
        s = std::exp(poly(c6, 3, lx));
    }
    result.p = normal_upper_tail(y, m, s);
    return result;
}

bool normality_test(std::span<const double> samples, double alpha) {
    if (samples.size() < 3) throw StatsError("normality_test: need at least 3 samples");
    auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    if (*hi - *lo <= 0.0) return false;
    return shapiro_wilk(samples).p >= alpha;
}

double f_survival(double f, double df1, double df2) {
    if (!(f > 0.0)) return 1.0;
    const double x = df2 / (df2 + df1 * f);
    return boost::math::ibeta(df2 / 2.0, df1 / 2.0, x);
}

AnovaResult anova_f(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.size() < 2 || group_b.size() < 2) throw StatsError("anova_f: each group needs at least 2 samples");
    auto mean = [](std::span<const double> v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const double na = static_cast<double>(group_a.size());
    const double nb = static_cast<double>(group_b.size());
    const double ma = mean(group_a);
    const double mb = mean(group_b);
    double sum_all = 0.0;
    for (double x : group_a) sum_all += x;
    for (double x : group_b) sum_all += x;
    const double grand = sum_all / (na + nb);

    double ss_within = 0.0;
    for (double x : group_a) ss_within += (x - ma) * (x - ma);
    for (double x : group_b) ss_within += (x - mb) * (x - mb);
    if (!(ss_within > 0.0)) throw StatsError("anova_f: zero within-group variance");

    const double ss_between = na * (ma - grand) * (ma - grand) + nb * (mb - grand) * (mb - grand);
    AnovaResult r;
    r.df_between = 1.0;
    r.df_within = na + nb - 2.0;
    r.f = (ss_between / r.df_between) / (ss_within / r.df_within);
    r.p = f_survival(r.f, r.df_between, r.df_within);
    return r;
}

}  // namespace reprint::stats

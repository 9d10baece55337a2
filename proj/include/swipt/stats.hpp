#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace swipt {

/// Monte Carlo estimate with a 95% confidence interval.
struct MetricEstimate {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double std_error = 0.0;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
};

/// Welford mean/variance accumulator with Chan's merge.
class RunningMoments {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningMoments& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        const double n = static_cast<double>(n_ + o.n_);
        const double d = o.mean_ - mean_;
        mean_ += d * static_cast<double>(o.n_) / n;
        m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
        n_ += o.n_;
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

inline double normal_quantile(double p) {
    return boost::math::quantile(boost::math::normal_distribution<>(), p);
}

/// Wilson score interval for `successes` out of `n` Bernoulli trials.
inline MetricEstimate wilson_estimate(double successes, std::uint64_t n, double level = 0.95) {
    MetricEstimate e;
    e.replications = n;
    if (n == 0) return e;
    const double nn = static_cast<double>(n);
    const double p = successes / nn;
    const double z = normal_quantile(0.5 + level / 2.0);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    e.mean = p;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    // The score interval is centered off p; keep the invariant ci_low <= mean <= ci_high.
    e.ci_low = std::min(e.ci_low, p);
    e.ci_high = std::max(e.ci_high, p);
    e.std_error = std::sqrt(p * (1.0 - p) / nn);
    return e;
}

/// Student-t interval for the mean of the accumulated samples.
inline MetricEstimate t_estimate(const RunningMoments& m, double level = 0.95) {
    MetricEstimate e;
    e.replications = m.count();
    e.mean = m.mean();
    if (m.count() < 2) {
        e.ci_low = e.ci_high = e.mean;
        return e;
    }
    const double n = static_cast<double>(m.count());
    e.std_error = std::sqrt(m.variance() / n);
    boost::math::students_t_distribution<> t(n - 1.0);
    const double q = boost::math::quantile(t, 0.5 + level / 2.0);
    e.ci_low = e.mean - q * e.std_error;
    e.ci_high = e.mean + q * e.std_error;
    return e;
}

/// Pearson statistic of observed counts against Poisson(mean). Neighbouring
/// values are pooled until every bin expects at least `min_expected` draws,
/// and the two tails are open-ended. Returns (statistic, degrees of freedom).
inline std::pair<double, int> poisson_chi_square(const std::vector<std::uint64_t>& counts, double mean,
                                                 double min_expected = 5.0) {
    const double n = static_cast<double>(counts.size());
    const boost::math::poisson_distribution<> law(mean);
    std::uint64_t top = 0;
    for (auto c : counts) top = std::max(top, c);
    top = std::max<std::uint64_t>(top, static_cast<std::uint64_t>(mean * 3.0) + 10);

    std::vector<double> observed(top + 1, 0.0);
    for (auto c : counts) observed[c] += 1.0;
    std::vector<double> expected(top + 1);
    for (std::uint64_t k = 0; k <= top; ++k) expected[k] = n * boost::math::pdf(law, static_cast<double>(k));
    expected[top] = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(top) - 1.0));

    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    std::pair<double, double> acc{0.0, 0.0};
    for (std::uint64_t k = 0; k <= top; ++k) {
        acc.first += observed[k];
        acc.second += expected[k];
        if (acc.second >= min_expected) {
            bins.push_back(acc);
            acc = {0.0, 0.0};
        }
    }
    if (acc.second > 0.0 || acc.first > 0.0) {
        if (bins.empty()) {
            bins.push_back(acc);
        } else {
            bins.back().first += acc.first;
            bins.back().second += acc.second;
        }
    }
    double stat = 0.0;
    for (const auto& [o, e] : bins) stat += (o - e) * (o - e) / e;
    return {stat, static_cast<int>(bins.size()) - 1};
}

}  // namespace swipt

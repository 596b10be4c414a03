#include <doctest.h>

#include <cmath>
#include <vector>

#include "rhm/disclap.hpp"
#include "rhm/errors.hpp"

using namespace rhm;

TEST_CASE("pmf at the mode and off the mode") {
    const DiscreteLaplace d{0.5, 0};
    CHECK(pmf(d, 0) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(pmf(d, 2) == doctest::Approx(1.0 / 12).epsilon(1e-12));
}

TEST_CASE("pmf is symmetric around the mode") {
    const DiscreteLaplace d{0.37, 14};
    for (int k = 1; k <= 30; ++k) {
        CHECK(pmf(d, 14 + k) == doctest::Approx(pmf(d, 14 - k)).epsilon(1e-14));
    }
}

TEST_CASE("pmf sums to 1 over a wide truncation") {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const DiscreteLaplace d{p, 0};
        double total = 0.0;
        for (int x = -200; x <= 200; ++x) total += pmf(d, x);
        CHECK(total > 1.0 - 1e-9);
        CHECK(total <= 1.0 + 1e-12);
    }
}

TEST_CASE("mean absolute deviation closed form") {
    CHECK(mean_abs_deviation(0.5) == doctest::Approx(4.0 / 3).epsilon(1e-14));
    CHECK(mean_abs_deviation(1e-8) == doctest::Approx(2e-8).epsilon(1e-6));
    CHECK_THROWS_AS(mean_abs_deviation(0.0), config_error);
    CHECK_THROWS_AS(mean_abs_deviation(1.0), config_error);
}

TEST_CASE("dispersion MLE inverts the mean absolute deviation") {
    CHECK(mle_dispersion(4.0 / 3) == doctest::Approx(0.5).epsilon(1e-12));
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        CHECK(std::abs(mle_dispersion(mean_abs_deviation(p)) - p) < 1e-10);
    }
    CHECK(mle_dispersion(0.0) == kDispersionMin);
    CHECK(mle_dispersion(1e6) == doctest::Approx(1.0 - 1e-6).epsilon(1e-9));
    CHECK(mle_dispersion(1e12) == 1.0 - kDispersionMin);
    CHECK_THROWS_AS(mle_dispersion(-0.1), config_error);
    CHECK_THROWS_AS(mle_dispersion(std::nan("")), config_error);
}

TEST_CASE("dispersion MLE is a stationary point of the sample log-likelihood") {
    Rng rng(7);
    const DiscreteLaplace truth{0.37, 5};
    const int n = 1000;
    std::vector<int> xs(n);
    double mad = 0.0;
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = sample(truth, rng);
        mad += std::abs(xs[static_cast<std::size_t>(i)] - truth.y);
    }
    mad /= n;
    const double pstar = mle_dispersion(mad);
    auto loglik = [&](double p) {
        double acc = 0.0;
        for (int x : xs) acc += log_pmf({p, truth.y}, x);
        return acc;
    };
    const double h = 1e-5;
    const double deriv = (loglik(pstar + h) - loglik(pstar - h)) / (2 * h) / n;
    CHECK(std::abs(deriv) < 1e-6);
}

TEST_CASE("sampling matches the mean absolute deviation within 3 standard errors") {
    Rng rng(123);
    const DiscreteLaplace d{0.3, 0};
    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = std::abs(sample(d, rng));
        sum += a;
        sumsq += a * a;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    const double se = std::sqrt(var / n);
    CHECK(std::abs(mean - mean_abs_deviation(0.3)) < 3 * se);
}

TEST_CASE("sampling matches the pmf (chi-square goodness of fit at 1%)") {
    Rng rng(20240401);
    const DiscreteLaplace d{0.4, 14};
    const int n = 1000000;
    // bins: x in [4, 24] individually, plus pooled tails
    std::vector<long> observed(23, 0);
    for (int i = 0; i < n; ++i) {
        const int x = sample(d, rng);
        if (x < 4) ++observed[0];
        else if (x > 24) ++observed[22];
        else ++observed[static_cast<std::size_t>(x - 4 + 1)];
    }
    std::vector<double> expected(23, 0.0);
    double tail_lo = 0.0, tail_hi = 0.0, mid = 0.0;
    for (int x = 4; x <= 24; ++x) {
        expected[static_cast<std::size_t>(x - 4 + 1)] = n * pmf(d, x);
        mid += pmf(d, x);
    }
    tail_lo = tail_hi = (1.0 - mid) / 2.0;  // symmetric tails
    expected[0] = n * tail_lo;
    expected[22] = n * tail_hi;
    double chi2 = 0.0;
    for (std::size_t b = 0; b < observed.size(); ++b) {
        const double diff = observed[b] - expected[b];
        chi2 += diff * diff / expected[b];
    }
    // chi-square 99th percentile, 22 degrees of freedom
    CHECK(chi2 < 40.289);
}

TEST_CASE("sampling is deterministic given the seed") {
    Rng a(99), b(99);
    const DiscreteLaplace d{0.6, -3};
    for (int i = 0; i < 1000; ++i) CHECK(sample(d, a) == sample(d, b));
}

TEST_CASE("near-degenerate dispersion always yields the mode") {
    Rng rng(5);
    const DiscreteLaplace d{kDispersionMin, 42};
    for (int i = 0; i < 1000; ++i) CHECK(sample(d, rng) == 42);
}

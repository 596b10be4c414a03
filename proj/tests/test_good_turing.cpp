#include <doctest.h>

#include <cmath>

#include "enumeration.hpp"
#include "rhm/errors.hpp"
#include "rhm/good_turing.hpp"

using namespace rhm;

namespace {

FrequencySpectrum make_spectrum(Eigen::Index n, std::map<int, int> counts) {
    FrequencySpectrum spec;
    spec.n = n;
    spec.counts_of_counts = std::move(counts);
    for (const auto& [m, nm] : spec.counts_of_counts) spec.distinct_types += nm;
    return spec;
}

Population uniform_population(int s) {
    Eigen::MatrixXi types(s, 1);
    for (int i = 0; i < s; ++i) types(i, 0) = i;
    return Population(types, Eigen::VectorXd::Constant(s, 1.0 / s));
}

Population skewed_population(int s) {
    Eigen::MatrixXi types(s, 1);
    Eigen::VectorXd probs(s);
    for (int i = 0; i < s; ++i) {
        types(i, 0) = i;
        probs[i] = i + 1.0;
    }
    probs /= probs.sum();
    return Population(types, probs);
}

}  // namespace

TEST_CASE("theta1 estimator") {
    CHECK(theta1_hat(frequency_spectrum(parse_database("1\n2\n3\n"))) == 1.0);
    CHECK(theta1_hat(frequency_spectrum(parse_database("5\n5\n5\n"))) == 0.0);
    CHECK(theta1_hat(make_spectrum(100, {{1, 74}, {2, 6}, {14, 1}})) ==
          doctest::Approx(0.74).epsilon(1e-15));
}

TEST_CASE("theta2 estimator") {
    CHECK(theta2_hat(frequency_spectrum(parse_database("1\n2\n3\n"))) == 0.0);
    CHECK(theta2_hat(frequency_spectrum(parse_database("4\n4\n"))) == 1.0);
    CHECK(theta2_hat(make_spectrum(100, {{1, 74}, {2, 6}, {14, 1}})) ==
          doctest::Approx(12.0 / 9900.0).epsilon(1e-15));
    CHECK_THROWS_AS(theta2_hat(make_spectrum(1, {{1, 1}})), config_error);
}

TEST_CASE("theta_m reduces to the singleton and doubleton estimators") {
    const auto spec = make_spectrum(100, {{1, 74}, {2, 6}, {14, 1}});
    CHECK(theta_m_hat(spec, 1) == theta1_hat(spec));
    CHECK(theta_m_hat(spec, 2) == doctest::Approx(theta2_hat(spec)).epsilon(1e-15));
    CHECK_THROWS_AS(theta_m_hat(spec, 0), config_error);
    CHECK_THROWS_AS(theta_m_hat(spec, 101), config_error);
}

TEST_CASE("theta_m estimator is exactly unbiased under exhaustive enumeration") {
    // E[N_3 / C(4,3)] over all 3^4 ordered databases equals theta_3
    const Population uni3 = uniform_population(3);
    const double expectation = rhm::testing::enumerated_theta_m_expectation(3, 4, uni3.probs(), 3);
    CHECK(expectation == doctest::Approx(theta_exact(uni3, 4, 3)).epsilon(1e-14));

    // same via the library estimator on library spectra, skewed population
    const Population skew = skewed_population(3);
    for (int m : {1, 2, 3}) {
        double acc = 0.0;
        rhm::testing::for_each_database(3, 4, skew.probs(),
                                        [&](const std::vector<int>& draws, double prob) {
                                            Eigen::MatrixXi recs(4, 1);
                                            for (int i = 0; i < 4; ++i) recs(i, 0) = draws[i];
                                            acc += prob * theta_m_hat(
                                                              frequency_spectrum(Database(recs)), m);
                                        });
        CHECK(std::abs(acc - theta_exact(skew, 4, m)) < 1e-12);
    }
}

TEST_CASE("theta_exact closed form") {
    Eigen::MatrixXi one(1, 1);
    one << 0;
    const Population degenerate(one, Eigen::VectorXd::Ones(1));
    CHECK(theta_exact(degenerate, 2, 1) == 0.0);
    CHECK(theta_exact(degenerate, 10, 1) == 0.0);

    const Population uni2 = uniform_population(2);
    CHECK(theta_exact(uni2, 2, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(theta_exact(uni2, 3, 2) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("theta_exact agrees with outcome enumeration for S=2") {
    const Population uni2 = uniform_population(2);
    // n=2, m=1: the 4 equiprobable ordered pairs, last draw unseen before
    double t1 = 0.0;
    rhm::testing::for_each_database(2, 2, uni2.probs(),
                                    [&](const std::vector<int>& draws, double prob) {
                                        if (draws[1] != draws[0]) t1 += prob;
                                    });
    CHECK(t1 == doctest::Approx(theta_exact(uni2, 2, 1)).epsilon(1e-15));
    // n=3, m=2: the 8 outcomes where the last two agree and differ from the first
    double t2 = 0.0;
    rhm::testing::for_each_database(2, 3, uni2.probs(),
                                    [&](const std::vector<int>& draws, double prob) {
                                        if (draws[2] == draws[1] && draws[2] != draws[0]) t2 += prob;
                                    });
    CHECK(t2 == doctest::Approx(theta_exact(uni2, 3, 2)).epsilon(1e-15));
}

TEST_CASE("theta1 is non-increasing in the sample size") {
    const Population skew = skewed_population(6);
    double prev = 1.0;
    for (int n = 1; n <= 40; ++n) {
        const double t = theta_exact(skew, n, 1);
        CHECK(t <= prev + 1e-15);
        prev = t;
    }
}

TEST_CASE("singleton/doubleton weight of evidence") {
    const auto spec = make_spectrum(100, {{1, 74}, {2, 6}, {14, 1}});
    const WoeEstimate est = woe_gg(spec);
    CHECK(est.log10_lr == doctest::Approx(std::log10(99.0 * 74.0 / 12.0)).epsilon(1e-12));
    CHECK(est.diagnostics.at("log10_lr_napprox") ==
          doctest::Approx(std::log10(100.0 * 74.0 / 12.0)).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(woe_gg(make_spectrum(10, {{1, 10}})), doctest::Contains("no doubletons"),
                         undefined_estimator);
    CHECK_THROWS_WITH_AS(woe_gg(make_spectrum(12, {{2, 6}})), doctest::Contains("no singletons"),
                         undefined_estimator);
}

TEST_CASE("the estimate depends on the database only through its spectrum") {
    const Database a = parse_database("1\n2\n3\n3\n4\n4\n5\n");
    const Database b = parse_database("90\n91\n80\n80\n70\n70\n60\n");
    CHECK(woe_gg(frequency_spectrum(a)).log10_lr == woe_gg(frequency_spectrum(b)).log10_lr);
}

TEST_CASE("true weight of evidence for uniform populations is log10(S-1)") {
    for (int s : {2, 3, 5, 11}) {
        const Population pop = uniform_population(s);
        for (Eigen::Index n : {2, 3, 10, 50}) {
            if (n < 2) continue;
            CHECK(woe_gg_true(pop, n) == doctest::Approx(std::log10(s - 1.0)).epsilon(1e-12));
        }
    }
    Eigen::MatrixXi one(1, 1);
    one << 7;
    const Population degenerate(one, Eigen::VectorXd::Ones(1));
    CHECK_THROWS_AS(woe_gg_true(degenerate, 5), undefined_estimator);
}

TEST_CASE("Brenner's kappa") {
    CHECK(brenner_kappa(make_spectrum(100, {{1, 74}, {2, 6}, {14, 1}})) ==
          doctest::Approx(10000.0 / 26.0).epsilon(1e-12));
    CHECK(brenner_kappa(make_spectrum(12, {{2, 6}})) == doctest::Approx(12.0).epsilon(1e-15));
    CHECK_THROWS_AS(brenner_kappa(make_spectrum(5, {{1, 5}})), undefined_estimator);
}

TEST_CASE("kappa approximates the estimator when singletons dominate doubletons") {
    for (int n1 : {60, 90, 120, 150, 200}) {
        for (int n2 = 1; n2 <= n1 / 20; ++n2) {
            const auto spec = make_spectrum(n1 + 2 * n2, {{1, n1}, {2, n2}});
            const double gg = woe_gg(spec).log10_lr;
            const double kappa = std::log10(brenner_kappa(spec));
            CHECK(std::abs(gg - kappa) < 0.05);
        }
    }
}

TEST_CASE("population type table validation and lookup") {
    Eigen::MatrixXi types(2, 2);
    types << 1, 2, 3, 4;
    Eigen::VectorXd probs(2);
    probs << 0.25, 0.75;
    const Population pop(types, probs);
    Haplotype h(2);
    h << 3, 4;
    CHECK(pop.frequency(h) == 0.75);
    h << 9, 9;
    CHECK(pop.frequency(h) == 0.0);

    probs << 0.5, 0.6;
    CHECK_THROWS_AS(Population(types, probs), config_error);
}

TEST_CASE("population file round trip") {
    const std::string text = "# types with counts\n10,20,3\n11,21,1\n";
    const Population pop = load_population(text);
    CHECK(pop.type_count() == 2);
    Haplotype h(2);
    h << 10, 20;
    CHECK(pop.frequency(h) == doctest::Approx(0.75).epsilon(1e-15));
    const Population again = load_population(serialize_population(pop, 4));
    CHECK(again.types() == pop.types());
    CHECK((again.probs() - pop.probs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("population projection merges colliding types") {
    Eigen::MatrixXi types(3, 2);
    types << 1, 5, 1, 6, 2, 5;
    Eigen::VectorXd probs(3);
    probs << 0.2, 0.3, 0.5;
    const Population pop(types, probs);
    const Population proj = pop.project({0});
    CHECK(proj.type_count() == 2);
    Haplotype h(1);
    h << 1;
    CHECK(proj.frequency(h) == doctest::Approx(0.5).epsilon(1e-12));
}

#include <catch2/catch.hpp>
#include "helpers.hpp"

using namespace sqg;

namespace {
std::vector<double> random_etas(std::mt19937_64& rng, int count) {
    std::uniform_real_distribution<double> mag(0.3, 3.0);
    std::bernoulli_distribution sign(0.5);
    std::vector<double> etas;
    for (int j = 0; j < count; ++j) etas.push_back((sign(rng) ? 1.0 : -1.0) * mag(rng));
    return etas;
}
}  // namespace

TEST_CASE("coefficient anchors") {
    REQUIRE(coeff_c(0) == 1.0);
    REQUIRE(coeff_c(1) == -0.5);
    REQUIRE(coeff_c(2) == 0.375);
    REQUIRE(coeff_d(1, 1) == Approx(0.5).epsilon(1e-14));
    REQUIRE(coeff_d(1, 2) == Approx(0.5).epsilon(1e-14));
    REQUIRE(coeff_d(1, 3) == Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("recurrence for c_n agrees with the Gamma-function definition") {
    for (int n = 0; n <= 5; ++n) {
        const double direct =
            std::sqrt(std::numbers::pi) / (std::tgamma(0.5 - n) * std::tgamma(n + 1.0));
        REQUIRE(coeff_c(n) == Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("c_n has the n^{-1/2} asymptotic size") {
    REQUIRE(std::abs(coeff_c(50)) * std::sqrt(50.0 * std::numbers::pi) > 0.9);
    REQUIRE(std::abs(coeff_c(50)) * std::sqrt(50.0 * std::numbers::pi) < 1.1);
}

TEST_CASE("d_{n,l} matches its factorial closed form") {
    for (int n = 1; n <= 4; ++n) {
        double fact = 1.0;   // (2n+1)!
        for (int k = 2; k <= 2 * n + 1; ++k) fact *= k;
        for (int l = 1; l <= 2 * n + 1; ++l) {
            double binom = 1.0;
            for (int k = 0; k < l; ++k) binom = binom * (2 * n + 1 - k) / (k + 1);
            REQUIRE(coeff_d(n, l) ==
                    Approx(2.0 * std::abs(coeff_c(n)) * binom / fact).epsilon(1e-13));
        }
    }
    REQUIRE_THROWS_AS(coeff_d(1, 0), std::out_of_range);
    REQUIRE_THROWS_AS(coeff_d(1, 4), std::out_of_range);
}

TEST_CASE("frozen trilinear symbol values") {
    REQUIRE(t1(1, 1, -1) == Approx(4.0 * std::log(2.0)).epsilon(1e-14));
    REQUIRE(t1(1, 1, 1) ==
            Approx(12.0 * std::log(2.0) - 9.0 * std::log(3.0)).epsilon(1e-13));
    // Symmetry under argument permutations.
    REQUIRE(t1(0.7, -1.3, 2.1) == Approx(t1(2.1, 0.7, -1.3)).epsilon(1e-14));
    REQUIRE(t1(0.7, -1.3, 2.1) == Approx(t1(-1.3, 0.7, 2.1)).epsilon(1e-14));
}

TEST_CASE("the n = 1 subset closed form reduces to the 7-term expression") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        SymbolQuery q;
        q.n = 1;
        q.etas = random_etas(rng, 3);
        REQUIRE(t_symbol_closed(q) ==
                Approx(t1(q.etas[0], q.etas[1], q.etas[2])).margin(1e-12));
    }
}

TEST_CASE("T_n is homogeneous of degree 2n") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 3; ++n) {
        for (double lambda : {0.5, 3.0}) {
            SymbolQuery q;
            q.n = n;
            q.etas = random_etas(rng, 2 * n + 1);
            SymbolQuery qs = q;
            for (double& e : qs.etas) e *= lambda;
            const double expected = std::pow(lambda, 2 * n) * t_symbol_closed(q);
            REQUIRE(t_symbol_closed(qs) == Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("alternating subset-power sums cancel") {
    std::mt19937_64 rng(99);
    for (int count = 2; count <= 7; ++count) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::vector<double> etas = random_etas(rng, count);
            double scale = 0.0;
            for (double e : etas) scale += std::abs(e);
            for (int p = 1; p <= count - 1; ++p)
                REQUIRE(std::abs(cancellation_sum(p, etas)) < 1e-8 * std::pow(scale, p));
        }
    }
    REQUIRE_THROWS_AS(cancellation_sum(0, {1.0, 2.0}), std::out_of_range);
    REQUIRE_THROWS_AS(cancellation_sum(2, {1.0, 2.0}), std::out_of_range);
    REQUIRE_THROWS_AS(cancellation_sum(1, {1.0}), std::invalid_argument);
}

TEST_CASE("gradient of the trilinear symbol on the constraint plane") {
    // The gradient vanishes at the space-resonance center (xi/3, xi/3) ...
    for (double xi : {1.0, -2.5, 7.0}) {
        const auto [d1, d2] = t1_gradient(xi, xi / 3.0, xi / 3.0);
        REQUIRE(std::abs(d1) < 1e-12 * std::max(1.0, std::abs(xi)));
        REQUIRE(std::abs(d2) < 1e-12 * std::max(1.0, std::abs(xi)));
    }
    // ... and equals (4 xi log 2, 4 xi log 2) at eta1 = eta2 = xi.
    for (double xi : {1.0, -2.5}) {
        const auto [d1, d2] = t1_gradient(xi, xi, xi);
        REQUIRE(d1 == Approx(4.0 * xi * std::log(2.0)).epsilon(1e-12));
        REQUIRE(d2 == Approx(4.0 * xi * std::log(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("gradient agrees with central differences of the symbol") {
    const double xi = 1.7, e1 = 0.6, e2 = -0.9, h = 1e-6;
    auto f = [&](double a, double b) { return t1(a, b, xi - a - b); };
    const auto [d1, d2] = t1_gradient(xi, e1, e2);
    REQUIRE(d1 == Approx((f(e1 + h, e2) - f(e1 - h, e2)) / (2 * h)).epsilon(1e-6));
    REQUIRE(d2 == Approx((f(e1, e2 + h) - f(e1, e2 - h)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("quadrature evaluation matches the closed form") {
    std::mt19937_64 rng(2024);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 15; ++trial) {
            SymbolQuery q;
            q.n = n;
            q.tol = 1e-10;
            q.etas = random_etas(rng, 2 * n + 1);
            const double closed = t_symbol_closed(q);
            const double quad = t_symbol_quadrature(q);
            REQUIRE(std::abs(closed - quad) <= 1e-8 * std::max(std::abs(closed), 1.0));
        }
    }
}

TEST_CASE("quadrature result reports its convergence status") {
    SymbolQuery q;
    q.n = 1;
    q.etas = {0.5, 1.0, -0.7};
    const QuadratureResult r = t_symbol_quadrature_full(q);
    REQUIRE(r.converged);
    REQUIRE(r.error_estimate < 1e-6);
}

TEST_CASE("queries are validated") {
    SymbolQuery q;
    q.n = 0;
    q.etas = {1.0};
    REQUIRE_THROWS_AS(t_symbol_closed(q), std::invalid_argument);
    q.n = 1;
    q.etas = {1.0, 2.0};   // wrong arity
    REQUIRE_THROWS_AS(t_symbol_closed(q), std::invalid_argument);
    q.etas = {1.0, 2.0, 3.0};
    q.tol = 0.0;
    REQUIRE_THROWS_AS(t_symbol_quadrature(q), std::invalid_argument);
    SymbolQuery big;
    big.n = 7;
    big.etas.assign(15, 1.0);
    REQUIRE_THROWS_AS(t_symbol_closed(big), std::invalid_argument);
}

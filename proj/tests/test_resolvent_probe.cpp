#include <doctest.h>

#include <numbers>

#include "quadspec/models.hpp"
#include "quadspec/resolvent_probe.hpp"

using namespace quadspec;

namespace {

ModelProblem single_well(const std::string& expr, int n, double h) {
    ModelProblem mp;
    mp.h = h;
    const auto q = parse_quadratic(expr, n);
    mp.points.push_back({PhasePoint::Zero(2 * q.n()), q, {}});
    return mp;
}

}  // namespace

TEST_SUITE("resolvent_probe") {

TEST_CASE("bound and region geometry") {
    CHECK(subelliptic_bound(0.01, 0, 0.3) == doctest::Approx(0.3));
    CHECK(subelliptic_bound(0.01, 1, 0.3) == doctest::Approx(std::pow(0.01, 2.0 / 3) * std::pow(0.3, 1.0 / 3)));
    const OmegaRegion region{1, 4.0, 0.5, 0.01};
    const auto zs = omega_grid(region, {5, 7});
    CHECK(zs.size() == 35);
    for (Complex z : zs) CHECK(region.contains(z));
    CHECK_FALSE(region.contains(0.01));
    CHECK_FALSE(region.contains(0.3));
    CHECK(region.contains(-0.3));
}

TEST_CASE("normal operator: sigma_min is the distance to the spectrum") {
    const auto mp = single_well("x^2 + xi^2", 1, 0.1);
    const auto s = probe_points(mp, {Complex(0.2, 0.0), Complex(0.1, 0.05)}, 16, 0);
    CHECK(s[0].sigma_min == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(s[1].sigma_min == doctest::Approx(0.05).epsilon(1e-10));
    CHECK(s[0].converged);
}

TEST_CASE("rotated oscillator: resolvent is large away from the spectrum") {
    // sigma_min(A - 4) is well below the distance from 4 to e^{i pi/4}{1,3,5,...}.
    const auto mp = single_well(models::davies(), 1, 1.0);
    const auto s = probe_points(mp, {Complex(4.0, 0.0)}, 32, 1);
    double dist = 1e9;
    for (int k = 0; k < 10; ++k) dist = std::min(dist, std::abs(4.0 - std::polar(2.0 * k + 1, std::numbers::pi / 4)));
    CHECK(s[0].converged);
    CHECK(s[0].sigma_min < dist);
}

TEST_CASE("subelliptic probe on an elliptic well") {
    const auto mp = single_well(models::definite(1), 1, 0.02);
    const auto r = subelliptic_probe(mp, {0, 4.0, 0.5, 0.02}, {4, 6}, 32);
    CHECK(r.k0 == 0);
    CHECK(r.converged_count() > 0);
    CHECK(r.passed());
    CHECK(r.min_ratio > 0.0);
    CHECK(r.symbol_hash.size() == 16);
}

TEST_CASE("probe input errors") {
    // Re q = xi^2 is degenerate: k0 = 1.
    const auto mp = single_well(models::davies(), 1, 0.02);
    CHECK(problem_k0(mp) == 1);
    CHECK_THROWS_AS(subelliptic_probe(mp, {0, 4.0, 0.5, 0.02}, {}, 16), InputError);
    CHECK_THROWS_AS(subelliptic_probe(mp, {0, 4.0, 0.01, 0.02}, {}, 16), InputError);
    CHECK_THROWS_AS(subelliptic_probe(mp, {0, 0.5, 0.5, 0.02}, {}, 16), InputError);
    const auto degenerate = single_well("i*(x^2 + xi^2)", 1, 0.02);
    CHECK_THROWS_AS(subelliptic_probe(degenerate, {0, 4.0, 0.5, 0.02}, {}, 16), InputError);
}

TEST_CASE("order-h resolvent estimate away from the spectrum") {
    auto mp = single_well("x^2 + xi^2", 1, 0.1);
    const auto zs = admissible_points(mp, 6.0, 0.5);
    REQUIRE_FALSE(zs.empty());
    for (Complex z : zs) {
        for (int k = 0; k < 4; ++k) CHECK(std::abs(z - (2.0 * k + 1.0)) >= 0.5);
    }
    const auto r = order_h_probe(mp, zs, {0.1, 0.05}, 16);
    // Normal operator: K = 1 / dist(z, spectrum) <= 2.
    CHECK(r.max_K <= 2.0 + 1e-9);
}

TEST_CASE("sector condition") {
    CHECK(check_sector_condition(parse_polynomial("0.1*x^4"), 2.0, 200, 1).inside);
    CHECK(check_sector_condition(parse_polynomial("x^4 + xi^4 + i*x^2*xi^2"), 2.0, 200, 1).inside);
    CHECK_FALSE(check_sector_condition(parse_polynomial("x^3"), 2.0, 200, 1).inside);
}

TEST_CASE("FNV-1a hash") {
    CHECK(symbol_hash("") == "cbf29ce484222325");
    CHECK(symbol_hash("a") == "af63dc4c8601ec8c");
    CHECK(symbol_hash("x^2") != symbol_hash("x^3"));
}

}

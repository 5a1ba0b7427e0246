#include <doctest.h>

#include <cmath>

#include "shiftsum/asymptotic.hpp"

using namespace shiftsum;

TEST_CASE("model values") {
    const ModelParams one{1.0, 0.0};
    const double g = MathConstants::gamma;
    const double expected = 0.5 * 2 * std::log(2.0) + (2 * g - 0.5) * 2;
    CHECK(model_theorem(2.0, one) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(model_theorem(2.0, one) == doctest::Approx(2.0018).epsilon(1e-4));

    const double e = std::exp(1.0);
    CHECK(model_lemma(e, one) == doctest::Approx(2 * g * e).epsilon(1e-14));

    ModelParams lemma = one;
    lemma.kind = ModelKind::lemma;
    CHECK(model_value(e, lemma) == model_lemma(e, one));
    CHECK(model_value(5.0, one) == model_theorem(5.0, one));

    CHECK_THROWS_AS(model_theorem(1.5, one), std::domain_error);
    CHECK_THROWS_AS(model_lemma(1.0, one), std::domain_error);
}

TEST_CASE("models are linear in the constants") {
    for (double x : {2.0, 10.0, 1e6, 1e12}) {
        const double a = model_theorem(x, {0.3, 0.0});
        const double b = model_theorem(x, {0.0, 0.7});
        CHECK(model_theorem(x, {0.3, 0.7}) == doctest::Approx(a + b).epsilon(1e-14));
        CHECK(b == doctest::Approx(0.7 * x).epsilon(1e-15));
        const ModelParams l1{0.3, 0.0, MathConstants::gamma, ModelKind::lemma};
        const ModelParams l2{0.0, 0.7, MathConstants::gamma, ModelKind::lemma};
        const ModelParams both{0.3, 0.7, MathConstants::gamma, ModelKind::lemma};
        CHECK(model_value(x, both) == doctest::Approx(model_value(x, l1) + model_value(x, l2)).epsilon(1e-14));
    }
}

TEST_CASE("residual table") {
    const auto zero = residual_table({8}, ModelParams{});
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].exact == DyadicRational(BigInt(23), 1));
    CHECK(zero[0].residual == 11.5);
    CHECK(zero[0].scaled == doctest::Approx(11.5 / std::pow(8.0, 0.75)).epsilon(1e-15));

    const auto flat = residual_table({8, 100}, ModelParams{0.5, 0.1}, 0.0);
    CHECK(flat[1].scaled == flat[1].residual);
    CHECK(flat[1].exact_f64 == 226.0);
    CHECK(flat[1].residual == doctest::Approx(226.0 - model_theorem(100.0, {0.5, 0.1})).epsilon(1e-15));

    const ModelParams lemma{0.0, 0.0, MathConstants::gamma, ModelKind::lemma};
    CHECK(residual_table({100}, lemma)[0].exact == DyadicRational(BigInt(1213), 2));

    const auto again = residual_table({8, 100}, ModelParams{0.5, 0.1}, 0.0);
    CHECK(again[0].residual == flat[0].residual);
    CHECK(again[1].scaled == flat[1].scaled);

    const auto rows = residual_rows({{8, DyadicRational(BigInt(23), 1)}}, ModelParams{}, 0.5);
    CHECK(rows[0].scaled == doctest::Approx(11.5 / std::sqrt(8.0)).epsilon(1e-15));
}

namespace {

std::vector<std::pair<double, double>> synthetic(double c, double beta) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 20; ++i) {
        const double x = 1e3 * std::pow(1e6, i / 19.0);
        pts.emplace_back(x, c * x * std::pow(std::log(x), beta));
    }
    return pts;
}

}  // namespace

TEST_CASE("log-power fit recovers synthetic laws") {
    const auto linear = fit_log_power(synthetic(2.0, 0.0));
    CHECK(std::fabs(linear.c - 2.0) < 1e-6);
    CHECK(std::fabs(linear.beta) < 1e-6);
    CHECK(linear.rms_relative_error < 1e-6);
    CHECK(linear.points_used == 20);

    const auto root = fit_log_power(synthetic(0.3, 0.5));
    CHECK(std::fabs(root.c - 0.3) < 1e-6);
    CHECK(std::fabs(root.beta - 0.5) < 1e-6);

    const auto xlogx = fit_log_power(synthetic(1.0, 1.0));
    CHECK(std::fabs(xlogx.c - 1.0) < 1e-6);
    CHECK(std::fabs(xlogx.beta - 1.0) < 1e-6);

    const auto fixed = fit_log_power(synthetic(0.7, 1.0), 1.0);
    CHECK(fixed.beta_fixed);
    CHECK(fixed.beta == 1.0);
    CHECK(std::fabs(fixed.c - 0.7) < 1e-9);

    CHECK_THROWS_AS(fit_log_power({{10, 1}, {100, 2}}), std::domain_error);
    CHECK_THROWS_AS(fit_log_power({{2, 1}, {100, 2}, {1000, 3}}), std::domain_error);
    CHECK_THROWS_AS(fit_log_power({{10, 1}, {100, -2}, {1000, 3}}), std::domain_error);
}

TEST_CASE("constants fit recovers synthetic constants") {
    const ModelParams truth{0.4, 0.1};
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 20; ++i) {
        const double x = 1e3 * std::pow(1e5, i / 19.0);
        pts.emplace_back(x, model_theorem(x, truth));
    }
    const ConstantsFit fit = fit_model_constants(pts);
    CHECK(std::fabs(fit.C1 - 0.4) < 1e-9);
    CHECK(std::fabs(fit.C2 - 0.1) < 1e-9);
    CHECK(fit.rms_relative_error < 1e-12);
    CHECK(fit.points_used == 20);

    const ModelParams lemma{0.25, -0.05, MathConstants::gamma, ModelKind::lemma};
    std::vector<std::pair<double, double>> lpts;
    for (double x : {10.0, 100.0, 1e3, 1e4, 1e5}) lpts.emplace_back(x, model_lemma(x, lemma));
    const ConstantsFit lfit = fit_model_constants(lpts, ModelKind::lemma);
    CHECK(std::fabs(lfit.C1 - 0.25) < 1e-9);
    CHECK(std::fabs(lfit.C2 + 0.05) < 1e-9);
    CHECK(lfit.kind == ModelKind::lemma);

    CHECK_THROWS_AS(fit_model_constants({{10, 1}, {100, 2}}), std::domain_error);
    CHECK_THROWS_AS(fit_model_constants({{10, 1}, {10, 2}, {10, 3}}), std::domain_error);
}

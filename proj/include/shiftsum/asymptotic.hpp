#pragma once

// Main-term models, residuals against exact sums, and growth-law fits.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "shiftsum/dyadic.hpp"
#include "shiftsum/euler.hpp"
#include "shiftsum/summatory.hpp"

namespace shiftsum {

enum class ModelKind { theorem, lemma };

struct ModelParams {
    double C1 = 0.0;
    double C2 = 0.0;
    double gamma = MathConstants::gamma;
    ModelKind kind = ModelKind::theorem;
};

/// (C1/2) x ln x + ((2 gamma - 1/2) C1 + C2) x, for x >= 2.
double model_theorem(double x, const ModelParams& params);

/// C1 t ln t + ((2 gamma - 1) C1 + C2) t, for t >= 2.
double model_lemma(double t, const ModelParams& params);

/// Dispatch on params.kind.
double model_value(double x, const ModelParams& params);

struct ResidualPoint {
    std::uint64_t x = 0;
    DyadicRational exact;
    double exact_f64 = 0.0;
    double model = 0.0;
    double residual = 0.0;  // exact_f64 - model
    double theta = 0.75;
    double scaled = 0.0;    // residual / x^theta
};

/// Exact S(x) (or T(x) for the lemma model) via the block method, row per x.
std::vector<ResidualPoint> residual_table(const std::vector<std::uint64_t>& xs,
                                          const ModelParams& params, double theta = 0.75,
                                          const SummatoryConfig& config = {});

/// Same table from exact values already in hand.
std::vector<ResidualPoint> residual_rows(
    const std::vector<std::pair<std::uint64_t, DyadicRational>>& exact, const ModelParams& params,
    double theta);

/// y = c x (ln x)^beta, fitted as ln(y/x) = ln c + beta ln ln x.
struct FitResult {
    double c = 0.0;
    double beta = 0.0;
    double rms_relative_error = 0.0;
    std::uint64_t points_used = 0;
    bool beta_fixed = false;
};

/// Needs >= 3 points, every x >= 3 and y > 0. With fixed_beta only c is fitted.
FitResult fit_log_power(const std::vector<std::pair<double, double>>& points,
                        std::optional<double> fixed_beta = std::nullopt);

struct ConstantsFit {
    double C1 = 0.0;
    double C2 = 0.0;
    double rms_relative_error = 0.0;
    std::uint64_t points_used = 0;
    ModelKind kind = ModelKind::theorem;
};

/// Least squares for (C1, C2) in the chosen model, each row weighted by 1/x.
/// Needs >= 3 points, x >= 2, and at least two distinct x.
ConstantsFit fit_model_constants(const std::vector<std::pair<double, double>>& points,
                                 ModelKind kind = ModelKind::theorem,
                                 double gamma = MathConstants::gamma);

}  // namespace shiftsum

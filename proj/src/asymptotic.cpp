#include "shiftsum/asymptotic.hpp"

#include <cmath>
#include <stdexcept>

namespace shiftsum {

namespace {

void require_model_domain(double x) {
    if (!(x >= 2.0)) throw std::domain_error("model needs x >= 2");
}

// Ordinary least squares v = a + b u on centred data.
struct Line {
    double intercept = 0.0;
    double slope = 0.0;
};

Line fit_line(const std::vector<double>& u, const std::vector<double>& v) {
    const double n = static_cast<double>(u.size());
    double mu = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        mu += u[i];
        mv += v[i];
    }
    mu /= n;
    mv /= n;
    double suu = 0.0, suv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu += (u[i] - mu) * (u[i] - mu);
        suv += (u[i] - mu) * (v[i] - mv);
    }
    if (!(suu > 0.0)) throw std::domain_error("rank-deficient design: all abscissae equal");
    const double slope = suv / suu;
    return {mv - slope * mu, slope};
}

double rms(const std::vector<double>& e) {
    double s = 0.0;
    for (double v : e) s += v * v;
    return std::sqrt(s / static_cast<double>(e.size()));
}

}  // namespace

double model_theorem(double x, const ModelParams& p) {
    require_model_domain(x);
    return p.C1 / 2.0 * x * std::log(x) + ((2.0 * p.gamma - 0.5) * p.C1 + p.C2) * x;
}

double model_lemma(double t, const ModelParams& p) {
    require_model_domain(t);
    return p.C1 * t * std::log(t) + ((2.0 * p.gamma - 1.0) * p.C1 + p.C2) * t;
}

double model_value(double x, const ModelParams& p) {
    return p.kind == ModelKind::theorem ? model_theorem(x, p) : model_lemma(x, p);
}

std::vector<ResidualPoint> residual_rows(
    const std::vector<std::pair<std::uint64_t, DyadicRational>>& exact, const ModelParams& params,
    double theta) {
    std::vector<ResidualPoint> rows;
    rows.reserve(exact.size());
    for (const auto& [x, value] : exact) {
        ResidualPoint r;
        r.x = x;
        r.exact = value;
        r.exact_f64 = value.to_double();
        r.model = model_value(static_cast<double>(x), params);
        r.residual = r.exact_f64 - r.model;
        r.theta = theta;
        r.scaled = r.residual / std::pow(static_cast<double>(x), theta);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResidualPoint> residual_table(const std::vector<std::uint64_t>& xs,
                                          const ModelParams& params, double theta,
                                          const SummatoryConfig& config) {
    std::vector<std::pair<std::uint64_t, DyadicRational>> exact;
    exact.reserve(xs.size());
    for (const std::uint64_t x : xs) {
        if (x < 2) throw std::domain_error("residual table needs x >= 2");
        const SumReport r = params.kind == ModelKind::theorem ? sum_block(x, config) : T_sum(x, config);
        exact.emplace_back(x, r.value);
    }
    return residual_rows(exact, params, theta);
}

FitResult fit_log_power(const std::vector<std::pair<double, double>>& points,
                        std::optional<double> fixed_beta) {
    if (points.size() < 3) throw std::domain_error("log-power fit needs at least 3 points");
    std::vector<double> u, v;
    for (const auto& [x, y] : points) {
        if (!(x >= 3.0)) throw std::domain_error("log-power fit needs x >= 3");
        if (!(y > 0.0)) throw std::domain_error("log-power fit needs y > 0");
        u.push_back(std::log(std::log(x)));
        v.push_back(std::log(y / x));
    }

    FitResult out;
    out.points_used = points.size();
    double log_c = 0.0;
    if (fixed_beta) {
        out.beta = *fixed_beta;
        out.beta_fixed = true;
        for (std::size_t i = 0; i < u.size(); ++i) log_c += v[i] - out.beta * u[i];
        log_c /= static_cast<double>(u.size());
    } else {
        const Line line = fit_line(u, v);
        log_c = line.intercept;
        out.beta = line.slope;
    }
    out.c = std::exp(log_c);

    std::vector<double> rel;
    for (const auto& [x, y] : points) {
        const double fitted = out.c * x * std::pow(std::log(x), out.beta);
        rel.push_back((fitted - y) / y);
    }
    out.rms_relative_error = rms(rel);
    return out;
}

ConstantsFit fit_model_constants(const std::vector<std::pair<double, double>>& points,
                                 ModelKind kind, double gamma) {
    if (points.size() < 3) throw std::domain_error("constants fit needs at least 3 points");
    // y/x = a ln x + b, with a and b linear in (C1, C2).
    std::vector<double> u, v;
    for (const auto& [x, y] : points) {
        if (!(x >= 2.0)) throw std::domain_error("constants fit needs x >= 2");
        u.push_back(std::log(x));
        v.push_back(y / x);
    }
    const Line line = fit_line(u, v);

    ConstantsFit out;
    out.kind = kind;
    out.points_used = points.size();
    if (kind == ModelKind::theorem) {
        out.C1 = 2.0 * line.slope;
        out.C2 = line.intercept - (2.0 * gamma - 0.5) * out.C1;
    } else {
        out.C1 = line.slope;
        out.C2 = line.intercept - (2.0 * gamma - 1.0) * out.C1;
    }

    const ModelParams params{out.C1, out.C2, gamma, kind};
    std::vector<double> rel;
    // Absolute error where y is zero.
    for (const auto& [x, y] : points) rel.push_back((model_value(x, params) - y) / (y != 0.0 ? y : 1.0));
    out.rms_relative_error = rms(rel);
    return out;
}

}  // namespace shiftsum

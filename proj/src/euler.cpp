#include "shiftsum/euler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shiftsum/arith.hpp"
#include "shiftsum/summatory.hpp"

namespace shiftsum {

namespace {

HighPrecision hp_abs(const HighPrecision& v) { return v < 0 ? HighPrecision(-v) : v; }

std::vector<std::uint64_t> primes_through(std::uint64_t cutoff) {
    return build_spf(cutoff).primes();
}

PrimeContribution contribution_at_one(std::uint64_t p) {
    const HighPrecision inv = HighPrecision(1) / p;
    const HighPrecision factor = 1 - inv / 2 + inv * inv / 2;
    const HighPrecision slope = inv / 2 - inv * inv;  // derivative of the factor, over ln p
    return {p, factor, log(HighPrecision(p)) * slope / factor};
}

void fill_mirrors(EulerProductEstimate& e) {
    e.C1_f64 = e.C1_partial.convert_to<double>();
    e.logderiv_f64 = e.logderiv_sum.convert_to<double>();
    e.C2_f64 = e.C2_partial.convert_to<double>();
}

}  // namespace

const HighPrecision& MathConstants::gamma_hp() {
    static const HighPrecision g("0.57721566490153286060651209008240243104215933593992");
    return g;
}

double local_factor(std::uint64_t p, double s) {
    if (!(s > 0)) throw std::domain_error("local factor needs s > 0");
    if (p < 2) throw std::domain_error("local factor needs a prime p");
    const long double x = std::pow(static_cast<long double>(p), -static_cast<long double>(s));
    const long double one_minus = 1.0L - x;
    return static_cast<double>((2.0L - x + x * x) / (2.0L * one_minus * one_minus));
}

double local_factor_series(std::uint64_t p, double s, unsigned terms) {
    if (!(s > 0)) throw std::domain_error("local factor needs s > 0");
    const long double x = std::pow(static_cast<long double>(p), -static_cast<long double>(s));
    long double sum = 0.0L;
    long double power = 1.0L;
    std::vector<long double> parts;
    parts.reserve(terms);
    for (unsigned m = 1; m <= terms; ++m) {
        power *= x;
        parts.push_back((2.0L * m + 1.0L) / 2.0L * power);
    }
    // Smallest terms first.
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) sum += *it;
    return static_cast<double>(1.0L + sum);
}

SeriesCheck series_identity_check(double x, unsigned M) {
    if (!(std::fabs(x) < 1.0)) throw std::domain_error("series needs |x| < 1");
    if (std::fabs(x) > 0.9) throw std::domain_error("series check supports |x| <= 0.9");
    if (M < 1) throw std::domain_error("series check needs M >= 1");
    long double lhs = 0.0L;
    long double power = 1.0L;
    for (unsigned m = 0; m <= M; ++m) {
        lhs += (2.0L * m + 1.0L) * power;
        power *= x;
    }
    const long double X = x;
    const long double rhs = (1.0L + X) / ((1.0L - X) * (1.0L - X));
    return {static_cast<double>(lhs), static_cast<double>(rhs),
            static_cast<double>(std::fabs(lhs - rhs))};
}

TruncatedProduct truncated_P(double s, std::uint64_t cutoff) {
    if (!(s > 0)) throw std::domain_error("truncated product needs s > 0");
    if (cutoff < 2) throw std::domain_error("truncated product needs cutoff >= 2");

    const HighPrecision hs(s);
    HighPrecision product = 1;
    HighPrecision log_sum = 0;
    std::uint64_t used = 0;
    for (const std::uint64_t p : primes_through(cutoff)) {
        const HighPrecision x = exp(-hs * log(HighPrecision(p)));
        const HighPrecision factor = 1 - x / 2 + x * x / 2;
        product *= factor;
        log_sum += log(factor);
        ++used;
    }
    TruncatedProduct out;
    out.s = s;
    out.cutoff = cutoff;
    out.primes_used = used;
    out.product = product;
    out.product_from_logs = exp(log_sum);
    out.value_f64 = product.convert_to<double>();
    out.relative_gap = (hp_abs(product - out.product_from_logs) / product).convert_to<double>();
    return out;
}

EulerProductEstimate constants_estimate(std::uint64_t cutoff, bool keep_per_prime) {
    if (cutoff < 2) throw std::domain_error("constants need cutoff >= 2");
    EulerProductEstimate e;
    e.cutoff = cutoff;
    e.C1_partial = 1;
    e.logderiv_sum = 0;
    if (keep_per_prime) e.per_prime.emplace();
    for (const std::uint64_t p : primes_through(cutoff)) {
        PrimeContribution c = contribution_at_one(p);
        e.C1_partial *= c.factor;
        e.logderiv_sum += c.logderiv_term;
        e.largest_prime = p;
        if (keep_per_prime) e.per_prime->push_back(std::move(c));
    }
    e.C2_partial = e.C1_partial * e.logderiv_sum;
    fill_mirrors(e);
    return e;
}

std::vector<EulerProductEstimate> constants_estimates(std::vector<std::uint64_t> cutoffs) {
    if (cutoffs.empty()) return {};
    for (const auto c : cutoffs) {
        if (c < 2) throw std::domain_error("constants need cutoff >= 2");
    }
    std::vector<std::size_t> order(cutoffs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cutoffs[a] < cutoffs[b]; });

    std::vector<EulerProductEstimate> out(cutoffs.size());
    const auto primes = primes_through(cutoffs[order.back()]);
    HighPrecision c1 = 1;
    HighPrecision logderiv = 0;
    std::uint64_t largest = 0;
    std::size_t pi = 0;
    for (const std::size_t idx : order) {
        while (pi < primes.size() && primes[pi] <= cutoffs[idx]) {
            const PrimeContribution c = contribution_at_one(primes[pi]);
            c1 *= c.factor;
            logderiv += c.logderiv_term;
            largest = primes[pi];
            ++pi;
        }
        EulerProductEstimate& e = out[idx];
        e.cutoff = cutoffs[idx];
        e.largest_prime = largest;
        e.C1_partial = c1;
        e.logderiv_sum = logderiv;
        e.C2_partial = c1 * logderiv;
        fill_mirrors(e);
    }
    return out;
}

double zeta_real(double s, std::uint64_t n_terms) {
    if (!(s > 1)) throw std::domain_error("zeta_real needs s > 1");
    if (n_terms < 10) throw std::domain_error("zeta_real needs at least 10 terms");
    const long double ls = s;
    long double sum = 0.0L;
    for (std::uint64_t n = n_terms; n >= 1; --n) {
        sum += std::pow(static_cast<long double>(n), -ls);
    }
    sum += std::pow(static_cast<long double>(n_terms), 1.0L - ls) / (ls - 1.0L);
    return static_cast<double>(sum);
}

DirichletCheck dirichlet_factorization_check(double s, std::uint64_t n_max, std::uint64_t cutoff) {
    if (!(s > 1)) throw std::domain_error("dirichlet check needs s > 1");
    if (n_max < 1) throw std::domain_error("dirichlet check needs n_max >= 1");
    if (cutoff < 2) throw std::domain_error("dirichlet check needs cutoff >= 2");

    const long double ls = s;
    std::vector<long double> terms;
    terms.reserve(n_max);
    for_each_D_square(1, n_max, SummatoryConfig{}, [&](std::uint64_t n, SquareRatio r) {
        const long double d = std::ldexp(static_cast<long double>(r.odd), -static_cast<int>(r.omega));
        terms.push_back(d * std::pow(static_cast<long double>(n), -ls));
    });
    long double lhs = 0.0L;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) lhs += *it;

    const long double zeta = zeta_real(s, std::max<std::uint64_t>(n_max, 1'000'000));
    const long double product = truncated_P(s, cutoff).product.convert_to<long double>();
    const long double rhs = zeta * zeta * product;

    DirichletCheck out;
    out.s = s;
    out.n_max = n_max;
    out.cutoff = cutoff;
    out.lhs = static_cast<double>(lhs);
    out.rhs = static_cast<double>(rhs);
    out.gap = static_cast<double>(std::fabs(lhs - rhs));

    long double local = 1.0L;
    for (const std::uint64_t p : primes_through(cutoff)) local *= local_factor(p, s);
    out.euler_rhs = static_cast<double>(local);
    out.euler_gap = static_cast<double>(std::fabs(lhs - local));

    // integral of (ln t)^2 t^-s over [n_max, inf): ln^2 t stands in for the mean of tau(n^2).
    const long double a = ls - 1.0L;
    const long double L = std::log(static_cast<long double>(n_max));
    out.tail_estimate = static_cast<double>(std::pow(static_cast<long double>(n_max), -a) *
                                            (L * L / a + 2.0L * L / (a * a) + 2.0L / (a * a * a)));
    return out;
}

}  // namespace shiftsum

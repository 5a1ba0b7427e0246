#include "shiftsum/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "shiftsum/asymptotic.hpp"
#include "shiftsum/euler.hpp"
#include "shiftsum/square_shift.hpp"
#include "shiftsum/verify.hpp"

namespace shiftsum {

namespace {

using nlohmann::json;

// Every x up to here is checked by `verify`; above it, seeded random samples.
constexpr std::uint64_t kExhaustiveLimit = 100'000;
constexpr std::size_t kRandomSamples = 50;
constexpr std::uint64_t kPartialSummationLimit = 1'000;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string hp_string(const HighPrecision& v) { return v.str(40); }

json report_json(const SumReport& r) {
    return {{"quantity", std::string(to_string(r.quantity))},
            {"x", r.x},
            {"method", std::string(to_string(r.method))},
            {"value", dyadic_to_json(r.value)},
            {"value_text", r.value.to_string()},
            {"value_f64", r.value_f64},
            {"terms_processed", r.terms_processed}};
}

std::vector<std::string> report_row(const SumReport& r) {
    return {std::string(to_string(r.quantity)),
            std::to_string(r.x),
            std::string(to_string(r.method)),
            r.value.numerator().str(),
            std::to_string(r.value.exponent()),
            format_double(r.value_f64),
            std::to_string(r.terms_processed)};
}

std::string report_text(const SumReport& r) {
    std::ostringstream os;
    os << to_string(r.quantity) << "(" << r.x << ") [" << to_string(r.method)
       << "] = " << r.value.to_string() << " ~ " << format_double(r.value_f64) << "  (terms "
       << r.terms_processed << ")";
    return os.str();
}

// Library domain errors raised by user-supplied values are usage errors here.
template <typename F>
auto as_usage(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    } catch (const RefusalError& e) {
        throw UsageError(e.what());
    } catch (const ResourceError& e) {
        throw UsageError(e.what());
    }
}

json fit_json(const FitResult& f) {
    return {{"model", "y = c * x * (ln x)^beta"},
            {"c", f.c},
            {"beta", f.beta},
            {"beta_fixed", f.beta_fixed},
            {"rms_relative_error", f.rms_relative_error},
            {"points_used", f.points_used}};
}

json constants_fit_json(const ConstantsFit& f) {
    return {{"model", f.kind == ModelKind::theorem ? "theorem" : "lemma"},
            {"C1_hat", f.C1},
            {"C2_hat", f.C2},
            {"rms_relative_error", f.rms_relative_error},
            {"points_used", f.points_used}};
}

std::string fit_footer(const std::string& label, const FitResult& f) {
    return label + ",c=" + format_double(f.c) + ",beta=" + format_double(f.beta) +
           ",rms_relative_error=" + format_double(f.rms_relative_error) +
           ",points=" + std::to_string(f.points_used);
}

std::string constants_footer(const std::string& label, const ConstantsFit& f) {
    return label + ",C1_hat=" + format_double(f.C1) + ",C2_hat=" + format_double(f.C2) +
           ",rms_relative_error=" + format_double(f.rms_relative_error) +
           ",points=" + std::to_string(f.points_used);
}

std::vector<std::pair<double, double>> as_points(
    const std::vector<std::pair<std::uint64_t, DyadicRational>>& exact) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(exact.size());
    for (const auto& [x, v] : exact) pts.emplace_back(static_cast<double>(x), v.to_double());
    return pts;
}

std::vector<std::uint64_t> fit_grid(const RunConfig& config) {
    const auto xs = parse_grid(config.grid);
    if (xs.size() < 3) throw UsageError("grid must contain at least 3 points for fitting");
    if (xs.front() < 3) throw UsageError("grid points must be >= 3 when fitting log-powers");
    return xs;
}

std::vector<std::pair<std::uint64_t, DyadicRational>> exact_S_on(
    const std::vector<std::uint64_t>& xs, const SummatoryConfig& sc) {
    std::vector<std::pair<std::uint64_t, DyadicRational>> exact;
    exact.reserve(xs.size());
    for (const auto x : xs) exact.emplace_back(x, as_usage([&] { return sum_block(x, sc); }).value);
    return exact;
}

// T(N) at increasing checkpoints from a single sieve pass.
std::vector<std::pair<std::uint64_t, DyadicRational>> exact_T_on(
    const std::vector<std::uint64_t>& Ns, const SummatoryConfig& sc) {
    std::vector<std::pair<std::uint64_t, DyadicRational>> out;
    if (Ns.empty()) return out;
    if (Ns.back() > kMaxSquareIndex) throw UsageError("N must be <= 10^12");
    unsigned __int128 acc = 0;  // 2^16 * running sum
    std::size_t next = 0;
    for_each_D_square(1, Ns.back(), sc, [&](std::uint64_t m, SquareRatio r) {
        acc += static_cast<unsigned __int128>(r.odd) << (16 - r.omega);
        while (next < Ns.size() && Ns[next] == m) {
            BigInt big = static_cast<std::uint64_t>(acc >> 64);
            big <<= 64;
            big += static_cast<std::uint64_t>(acc);
            out.emplace_back(m, DyadicRational(big, 16));
            ++next;
        }
    });
    return out;
}

}  // namespace

SummatoryConfig RunConfig::summatory() const {
    SummatoryConfig sc;
    sc.segment_size = segment_size;
    sc.direct_cap = direct_cap;
    sc.threads = threads;
    return sc;
}

std::uint64_t parse_count(const std::string& text) {
    if (text.empty()) throw UsageError("empty integer");
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec == std::errc() && res.ptr == text.data() + text.size()) return v;

    // Scientific form: digits[.digits]e[+]digits, accepted only when the value is integral.
    const auto e = text.find_first_of("eE");
    if (e != std::string::npos && e > 0 && text.find('-') == std::string::npos) {
        std::string mantissa = text.substr(0, e);
        std::string exponent = text.substr(e + 1);
        if (!exponent.empty() && exponent[0] == '+') exponent.erase(0, 1);
        std::string frac;
        if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
            frac = mantissa.substr(dot + 1);
            mantissa.erase(dot);
        }
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (mantissa.empty() && frac.empty()) throw UsageError("not a non-negative integer: " + text);
        if (mantissa.find_first_not_of("0123456789") != std::string::npos ||
            frac.find_first_not_of("0123456789") != std::string::npos || exponent.empty() ||
            exponent.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("not a non-negative integer: " + text);
        }
        const std::uint64_t expo = parse_count(exponent);
        if (expo < frac.size()) throw UsageError("not a non-negative integer: " + text);
        const std::string digits = (mantissa.empty() ? "0" : mantissa) + frac;
        std::uint64_t out = 0;
        for (const char c : digits) {
            if (out > (UINT64_MAX - 9) / 10) throw UsageError("integer out of range: " + text);
            out = out * 10 + static_cast<std::uint64_t>(c - '0');
        }
        for (std::uint64_t i = frac.size(); i < expo && out != 0; ++i) {
            if (out > UINT64_MAX / 10) throw UsageError("integer out of range: " + text);
            out *= 10;
        }
        return out;
    }
    throw UsageError("not a non-negative integer: " + text);
}

long double parse_real_argument(const std::string& text) {
    if (text.find_first_of(".eE") == std::string::npos) return static_cast<long double>(parse_count(text));
    std::size_t used = 0;
    long double v = 0;
    try {
        v = std::stold(text, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: " + text);
    }
    if (used != text.size() || !std::isfinite(v)) throw UsageError("not a number: " + text);
    // Exact for integral scientific forms such as 1e18.
    if (text.find('.') == std::string::npos) {
        try {
            return static_cast<long double>(parse_count(text));
        } catch (const UsageError&) {
        }
    }
    return v;
}

std::vector<std::uint64_t> parse_cutoff_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_count(item));
    if (out.empty()) throw UsageError("empty cutoff list");
    return out;
}

std::vector<std::uint64_t> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("grid must be lo:hi:ratio");
    const std::uint64_t lo = parse_count(spec.substr(0, c1));
    const std::uint64_t hi = parse_count(spec.substr(c1 + 1, c2 - c1 - 1));
    const std::string ratio = spec.substr(c2 + 1);

    double base = 0.0, exponent = 1.0;
    try {
        const auto caret = ratio.find('^');
        if (caret == std::string::npos) {
            base = std::stod(ratio);
        } else {
            base = std::stod(ratio.substr(0, caret));
            exponent = std::stod(ratio.substr(caret + 1));
        }
    } catch (const std::exception&) {
        throw UsageError("bad grid ratio: " + ratio);
    }
    if (lo < 1 || hi < lo) throw UsageError("grid needs 1 <= lo <= hi");
    if (!(std::pow(base, exponent) > 1.0)) throw UsageError("grid ratio must exceed 1");

    std::vector<std::uint64_t> xs;
    const long double top = static_cast<long double>(hi) * (1.0L + 1e-12L);
    for (std::uint64_t i = 0;; ++i) {
        const long double v = static_cast<long double>(lo) *
                              std::pow(static_cast<long double>(base),
                                       static_cast<long double>(exponent) * static_cast<long double>(i));
        if (v > top) break;
        const auto x = static_cast<std::uint64_t>(std::llround(v));
        if (xs.empty() || xs.back() != x) xs.push_back(std::min(x, hi));
    }
    return xs;
}

CommandOutput cmd_sum(const RunConfig& config) {
    Stopwatch watch;
    if (!config.x) throw UsageError("sum needs --x");
    const std::uint64_t x = as_usage([&] { return floor_argument(*config.x); });
    const auto sc = config.summatory();
    const std::string& method = config.method;
    if (method != "direct" && method != "block" && method != "both" && method != "paper-literal") {
        throw UsageError("unknown method: " + method);
    }

    CommandOutput out;
    out.record.command = "sum";
    out.record.seed = config.seed;
    out.record.inputs = {{"x", x}, {"method", method}, {"segment_size", config.segment_size},
                         {"direct_cap", config.direct_cap}};
    out.csv.header = {"quantity", "x", "method", "numerator", "exponent", "value_f64", "terms_processed"};

    std::vector<SumReport> reports;
    if (method == "direct" || method == "both") {
        reports.push_back(as_usage([&] { return sum_direct(x, sc); }));
    }
    if (method == "block" || method == "both") {
        reports.push_back(as_usage([&] { return sum_block(x, sc); }));
    }
    if (method == "paper-literal") {
        reports.push_back(as_usage([&] { return sum_block_paper_literal(x, sc); }));
    }

    json list = json::array();
    for (const auto& r : reports) {
        list.push_back(report_json(r));
        out.csv.rows.push_back(report_row(r));
        out.text.push_back(report_text(r));
    }
    out.record.results["reports"] = list;

    if (method == "both") {
        const bool equal = reports[0].value == reports[1].value;
        out.record.results["equal"] = equal;
        out.csv.footer.push_back(std::string("equal=") + (equal ? "true" : "false"));
        out.text.push_back(std::string("direct == block: ") + (equal ? "yes" : "NO"));
        if (!equal) out.exit_code = kExitVerifyFailed;
    }
    if (method == "paper-literal") {
        const SumReport corrected = sum_block(x, sc);
        const DyadicRational deviation = reports[0].value - corrected.value;
        out.record.results["non_oracle"] = true;
        out.record.results["corrected_value"] = dyadic_to_json(corrected.value);
        out.record.results["deviation"] = dyadic_to_json(deviation);
        out.record.results["deviation_text"] = deviation.to_string();
        out.record.warnings.push_back(
            "non-oracle: the uncorrected block formula counts n = k^2 with (k+1)^2 and does not equal S(x)");
        out.csv.footer.push_back("non_oracle=true,deviation=" + deviation.to_string());
        out.text.push_back("warning: non-oracle formula; deviation from S(x) = " + deviation.to_string());
    }
    out.record.elapsed_seconds = watch.seconds();
    return out;
}

CommandOutput cmd_constants(const RunConfig& config) {
    Stopwatch watch;
    if (config.cutoffs.empty()) throw UsageError("constants needs --cutoff or --cutoffs");
    for (const auto c : config.cutoffs) {
        if (c < 2) throw UsageError("cutoff must be >= 2");
    }
    const auto estimates = as_usage([&] { return constants_estimates(config.cutoffs); });

    CommandOutput out;
    out.record.command = "constants";
    out.record.seed = config.seed;
    out.record.inputs = {{"cutoffs", config.cutoffs}};
    out.csv.header = {"cutoff", "largest_prime", "C1_partial", "logderiv_sum", "C2_partial",
                      "C1_f64", "logderiv_f64", "C2_f64"};

    json list = json::array();
    for (const auto& e : estimates) {
        list.push_back({{"cutoff", e.cutoff},
                        {"largest_prime", e.largest_prime},
                        {"s", e.s},
                        {"C1_partial", hp_string(e.C1_partial)},
                        {"logderiv_sum", hp_string(e.logderiv_sum)},
                        {"C2_partial", hp_string(e.C2_partial)},
                        {"C1_f64", e.C1_f64},
                        {"logderiv_f64", e.logderiv_f64},
                        {"C2_f64", e.C2_f64}});
        out.csv.rows.push_back({std::to_string(e.cutoff), std::to_string(e.largest_prime),
                                hp_string(e.C1_partial), hp_string(e.logderiv_sum),
                                hp_string(e.C2_partial), format_double(e.C1_f64),
                                format_double(e.logderiv_f64), format_double(e.C2_f64)});
        out.text.push_back("cutoff " + std::to_string(e.cutoff) + ": C1_partial=" +
                           hp_string(e.C1_partial) + " logderiv_sum=" + hp_string(e.logderiv_sum) +
                           " C2_partial=" + hp_string(e.C2_partial));
    }
    out.record.results["estimates"] = list;

    // Trend across distinct cutoffs in increasing order.
    std::vector<const EulerProductEstimate*> sorted;
    for (const auto& e : estimates) sorted.push_back(&e);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](auto a, auto b) { return a->cutoff < b->cutoff; });
    bool c1_decreasing = true, logderiv_nondecreasing = true;
    std::size_t steps = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i]->largest_prime == sorted[i - 1]->largest_prime) continue;
        ++steps;
        c1_decreasing = c1_decreasing && sorted[i]->C1_partial < sorted[i - 1]->C1_partial;
        logderiv_nondecreasing =
            logderiv_nondecreasing && sorted[i]->logderiv_sum >= sorted[i - 1]->logderiv_sum;
    }
    json trend = {{"comparisons", steps}};
    if (steps > 0) {
        trend["C1_strictly_decreasing"] = c1_decreasing;
        trend["logderiv_nondecreasing"] = logderiv_nondecreasing;
        out.csv.footer.push_back(std::string("trend,C1_strictly_decreasing=") +
                                 (c1_decreasing ? "true" : "false") +
                                 ",logderiv_nondecreasing=" + (logderiv_nondecreasing ? "true" : "false"));
        out.text.push_back(std::string("trend: C1_partial ") +
                           (c1_decreasing ? "strictly decreasing" : "NOT strictly decreasing") +
                           ", logderiv_sum " + (logderiv_nondecreasing ? "nondecreasing" : "NOT nondecreasing"));
    }
    out.record.results["trend"] = trend;
    out.record.warnings.push_back(
        "partial products only: values depend on the cutoff and no limit is claimed");
    out.record.elapsed_seconds = watch.seconds();
    return out;
}

CommandOutput cmd_verify(const RunConfig& config) {
    Stopwatch watch;
    if (!config.max || *config.max < 1) throw UsageError("verify needs --max >= 1");
    const std::uint64_t max = *config.max;
    if (max > config.direct_cap) throw UsageError("--max exceeds the direct-method cap");
    const auto sc = config.summatory();
    const BlockSum block = default_block_sum(sc);

    std::vector<SuiteResult> suites;
    suites.push_back(check_oracle_equality(std::min(max, kExhaustiveLimit), block, sc));
    if (max > kExhaustiveLimit) {
        suites.push_back(check_oracle_equality_at(
            random_checkpoints(kRandomSamples, kExhaustiveLimit, max, config.seed), block, sc));
    }
    suites.push_back(check_partial_summation(std::min(max, kPartialSummationLimit), sc));
    suites.push_back(check_local_factor_series());
    suites.push_back(check_local_factor_identity());

    CommandOutput out;
    out.record.command = "verify";
    out.record.seed = config.seed;
    out.record.inputs = {{"max", max}, {"segment_size", config.segment_size}};
    out.csv.header = {"suite", "passed", "cases", "counterexample"};

    bool all = true;
    json list = json::array();
    for (const auto& s : suites) {
        all = all && s.passed;
        list.push_back({{"suite", s.name}, {"passed", s.passed}, {"cases", s.cases},
                        {"counterexample", s.counterexample}});
        out.csv.rows.push_back({s.name, s.passed ? "true" : "false", std::to_string(s.cases),
                                s.counterexample});
        out.text.push_back(s.name + ": " + (s.passed ? "PASS" : "FAIL") + " (" +
                           std::to_string(s.cases) + " cases)" +
                           (s.passed ? "" : " counterexample " + s.counterexample));
    }
    out.record.results["suites"] = list;
    out.record.results["all_passed"] = all;
    out.exit_code = all ? kExitOk : kExitVerifyFailed;
    out.record.elapsed_seconds = watch.seconds();
    return out;
}

CommandOutput cmd_table(const RunConfig& config) {
    Stopwatch watch;
    const auto xs = fit_grid(config);
    const auto sc = config.summatory();
    const auto exact = exact_S_on(xs, sc);
    const auto points = as_points(exact);

    const ConstantsFit constants = fit_model_constants(points, ModelKind::theorem);
    ModelParams params{config.c1, config.c2, MathConstants::gamma, ModelKind::theorem};
    if (config.fit_constants) {
        params.C1 = constants.C1;
        params.C2 = constants.C2;
    }
    const auto rows = residual_rows(exact, params, config.theta);
    const FitResult power = fit_log_power(points);

    CommandOutput out;
    out.record.command = "table";
    out.record.seed = config.seed;
    out.record.inputs = {{"grid", config.grid},   {"theta", config.theta},
                         {"c1", config.c1},       {"c2", config.c2},
                         {"fit_constants", config.fit_constants},
                         {"segment_size", config.segment_size}};
    out.csv.header = {"x", "exact_numerator", "exact_exponent", "exact_f64", "model", "residual", "scaled"};

    json list = json::array();
    for (const auto& r : rows) {
        list.push_back({{"x", r.x},
                        {"exact", dyadic_to_json(r.exact)},
                        {"exact_f64", r.exact_f64},
                        {"model", r.model},
                        {"residual", r.residual},
                        {"scaled", r.scaled}});
        out.csv.rows.push_back({std::to_string(r.x), r.exact.numerator().str(),
                                std::to_string(r.exact.exponent()), format_double(r.exact_f64),
                                format_double(r.model), format_double(r.residual),
                                format_double(r.scaled)});
        out.text.push_back("x=" + std::to_string(r.x) + " S=" + format_double(r.exact_f64) +
                           " model=" + format_double(r.model) + " residual=" + format_double(r.residual) +
                           " scaled=" + format_double(r.scaled));
    }
    out.record.results["params"] = {{"C1", params.C1}, {"C2", params.C2}, {"gamma", params.gamma},
                                    {"model", "theorem"}, {"fitted", config.fit_constants}};
    out.record.results["theta"] = config.theta;
    out.record.results["rows"] = list;
    out.record.results["fit_log_power"] = fit_json(power);
    out.record.results["fit_model_constants"] = constants_fit_json(constants);
    out.csv.footer.push_back("params,C1=" + format_double(params.C1) + ",C2=" + format_double(params.C2) +
                             ",theta=" + format_double(config.theta));
    out.csv.footer.push_back(fit_footer("fit_log_power", power));
    out.csv.footer.push_back(constants_footer("fit_model_constants", constants));
    out.text.push_back(fit_footer("fit_log_power", power));
    out.text.push_back(constants_footer("fit_model_constants", constants));
    out.record.elapsed_seconds = watch.seconds();
    return out;
}

CommandOutput cmd_fit(const RunConfig& config) {
    Stopwatch watch;
    const auto xs = fit_grid(config);
    const auto sc = config.summatory();
    const auto s_points = as_points(exact_S_on(xs, sc));
    const auto t_points = as_points(exact_T_on(xs, sc));

    const FitResult s_power = fit_log_power(s_points);
    const FitResult t_power = fit_log_power(t_points);
    const ConstantsFit s_constants = fit_model_constants(s_points, ModelKind::theorem);
    const ConstantsFit t_constants = fit_model_constants(t_points, ModelKind::lemma);

    CommandOutput out;
    out.record.command = "fit";
    out.record.seed = config.seed;
    out.record.inputs = {{"grid", config.grid}, {"segment_size", config.segment_size}};
    out.record.results = {{"S", {{"fit_log_power", fit_json(s_power)},
                                 {"fit_model_constants", constants_fit_json(s_constants)}}},
                          {"T", {{"fit_log_power", fit_json(t_power)},
                                 {"fit_model_constants", constants_fit_json(t_constants)}}},
                          {"points", xs}};
    out.csv.header = {"series", "fit", "p1_name", "p1", "p2_name", "p2", "rms_relative_error", "points"};
    auto power_row = [](const std::string& series, const FitResult& f) {
        return std::vector<std::string>{series, "log_power", "c", format_double(f.c), "beta",
                                        format_double(f.beta), format_double(f.rms_relative_error),
                                        std::to_string(f.points_used)};
    };
    auto constants_row = [](const std::string& series, const ConstantsFit& f) {
        return std::vector<std::string>{series, "model_constants", "C1_hat", format_double(f.C1),
                                        "C2_hat", format_double(f.C2),
                                        format_double(f.rms_relative_error), std::to_string(f.points_used)};
    };
    out.csv.rows = {power_row("S", s_power), constants_row("S", s_constants), power_row("T", t_power),
                    constants_row("T", t_constants)};
    out.text = {fit_footer("S fit_log_power", s_power), constants_footer("S fit_model_constants", s_constants),
                fit_footer("T fit_log_power", t_power), constants_footer("T fit_model_constants", t_constants)};
    out.record.elapsed_seconds = watch.seconds();
    return out;
}

std::string render(const CommandOutput& output, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: return to_json(output.record).dump(2) + "\n";
        case OutputFormat::csv: return render_csv(output.csv);
        case OutputFormat::text: {
            std::string s;
            for (const auto& w : output.record.warnings) s += "warning: " + w + "\n";
            for (const auto& line : output.text) s += line + "\n";
            return s;
        }
    }
    return {};
}

}  // namespace shiftsum

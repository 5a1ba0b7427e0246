#include <doctest.h>

#include <random>

#include "shiftsum/commands.hpp"
#include "shiftsum/record.hpp"

using namespace shiftsum;

TEST_CASE("parse_grid") {
    CHECK(parse_grid("1000:1000000:10^0.5") ==
          std::vector<std::uint64_t>{1000, 3162, 10000, 31623, 100000, 316228, 1000000});
    CHECK(parse_grid(kDefaultGrid).size() == 21);
    CHECK(parse_grid(kDefaultGrid).back() == 100'000'000);
    CHECK(parse_grid("10:100:2") == std::vector<std::uint64_t>{10, 20, 40, 80});
    CHECK_THROWS_AS(parse_grid("10:100"), UsageError);
    CHECK_THROWS_AS(parse_grid("10:100:1"), UsageError);
    CHECK_THROWS_AS(parse_grid("100:10:2"), UsageError);
    CHECK_THROWS_AS(parse_grid("10:100:x"), UsageError);
}

TEST_CASE("parse_count and parse_real_argument") {
    CHECK(parse_count("12") == 12);
    CHECK(parse_count("1e12") == 1'000'000'000'000ull);
    CHECK(parse_count("2.5e3") == 2500);
    CHECK(parse_count("1.0e+2") == 100);
    CHECK_THROWS_AS(parse_count("1.25e1"), UsageError);
    CHECK_THROWS_AS(parse_count("1e"), UsageError);
    CHECK_THROWS_AS(parse_count("1e30"), UsageError);
    CHECK_THROWS_AS(parse_count("-3"), UsageError);
    CHECK_THROWS_AS(parse_count("1.5"), UsageError);
    CHECK_THROWS_AS(parse_count(""), UsageError);
    CHECK_THROWS_AS(parse_count("99999999999999999999999"), UsageError);

    CHECK(parse_real_argument("8.75") == 8.75L);
    CHECK(parse_real_argument("1e6") == 1e6L);
    CHECK_THROWS_AS(parse_real_argument("eight"), UsageError);

    CHECK(parse_cutoff_list("10,100,1000") == std::vector<std::uint64_t>{10, 100, 1000});
    CHECK_THROWS_AS(parse_cutoff_list(""), UsageError);
}

TEST_CASE("records survive a JSON round trip") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        OutputRecord r;
        r.command = i % 2 ? "sum" : "table";
        r.seed = rng();
        r.elapsed_seconds = static_cast<double>(rng() % 100000) / 1000.0;
        const DyadicRational v(BigInt(static_cast<std::int64_t>(rng() % 1'000'000) - 500'000), rng() % 30);
        r.inputs = {{"x", rng() % 1'000'000}, {"method", "block"}};
        r.results = {{"value", dyadic_to_json(v)}, {"f", static_cast<double>(rng() % 1000) / 7.0}};
        if (rng() % 2) r.warnings.push_back("w" + std::to_string(i));

        const OutputRecord back = record_from_json(nlohmann::json::parse(to_json(r).dump()));
        REQUIRE(back == r);
        REQUIRE(dyadic_from_json(back.results["value"]) == v);
    }
    CHECK_THROWS(dyadic_from_json({{"numerator", "4"}, {"exponent", 1}}));
}

TEST_CASE("format_double round trips") {
    CHECK(format_double(11.5) == "11.5");
    CHECK(format_double(0.1) == "0.1");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1e9, 1e9);
    for (int i = 0; i < 1000; ++i) {
        const double v = dist(rng);
        REQUIRE(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("csv rendering") {
    CsvTable t{{"a", "b"}, {{"1", "2"}}, {"note"}};
    CHECK(render_csv(t) == "a,b\n1,2\n# note\n");
}

TEST_CASE("sum command") {
    RunConfig c;
    c.x = 8;
    c.method = "both";
    const CommandOutput out = cmd_sum(c);
    CHECK(out.exit_code == kExitOk);
    CHECK(out.record.results["equal"] == true);
    CHECK(out.record.results["reports"][1]["value_text"] == "23/2");
    CHECK(out.record.results["reports"][0]["method"] == "direct");

    c.method = "paper-literal";
    const CommandOutput lit = cmd_sum(c);
    CHECK(lit.record.results["reports"][0]["value_text"] == "12");
    CHECK(lit.record.results["deviation_text"] == "1/2");
    CHECK(lit.record.warnings.size() == 1);

    c.x = 8.9L;
    c.method = "block";
    CHECK(cmd_sum(c).record.inputs["x"] == 8);

    c.x = 0;
    CHECK_THROWS_AS(cmd_sum(c), UsageError);
    c.x = 8;
    c.method = "fast";
    CHECK_THROWS_AS(cmd_sum(c), UsageError);
    CHECK_THROWS_AS(cmd_sum(RunConfig{}), UsageError);
}

TEST_CASE("constants command") {
    RunConfig c;
    c.cutoffs = {2};
    const CommandOutput two = cmd_constants(c);
    CHECK(two.record.results["estimates"][0]["C1_partial"] == "0.875");
    CHECK(two.record.results["estimates"][0]["C2_partial"] == "0");

    c.cutoffs = {10, 100, 1000};
    const CommandOutput three = cmd_constants(c);
    const auto& e = three.record.results["estimates"];
    REQUIRE(e.size() == 3);
    CHECK(e[0]["C1_f64"].get<double>() > e[1]["C1_f64"].get<double>());
    CHECK(e[1]["C1_f64"].get<double>() > e[2]["C1_f64"].get<double>());
    CHECK(three.record.results["trend"]["C1_strictly_decreasing"] == true);
    CHECK(three.record.results["trend"]["logderiv_nondecreasing"] == true);

    c.cutoffs = {1};
    CHECK_THROWS_AS(cmd_constants(c), UsageError);
    CHECK_THROWS_AS(cmd_constants(RunConfig{}), UsageError);
}

TEST_CASE("verify command") {
    RunConfig c;
    c.max = 500;
    const CommandOutput out = cmd_verify(c);
    CHECK(out.exit_code == kExitOk);
    CHECK(out.record.results["all_passed"] == true);

    c.max = 0;
    CHECK_THROWS_AS(cmd_verify(c), UsageError);
    CHECK_THROWS_AS(cmd_verify(RunConfig{}), UsageError);
}

TEST_CASE("table and fit commands") {
    RunConfig c;
    c.grid = "1000:1000000:10^0.5";
    c.theta = 0.5;
    c.c1 = 0.4;
    const CommandOutput a = cmd_table(c);
    REQUIRE(a.record.results["rows"].size() == 7);
    const auto& row = a.record.results["rows"][0];
    CHECK(row["x"] == 1000);
    CHECK(row["exact"]["numerator"] == "22017");
    CHECK(row["scaled"].get<double>() ==
          doctest::Approx(row["residual"].get<double>() / std::sqrt(1000.0)).epsilon(1e-14));

    c.threads = 3;
    const CommandOutput b = cmd_table(c);
    CHECK(deterministic_dump(a.record) == deterministic_dump(b.record));
    CHECK(render_csv(a.csv) == render_csv(b.csv));

    const CommandOutput fit = cmd_fit(c);
    CHECK(fit.record.results["points"].size() == 7);
    CHECK(fit.record.results["S"]["fit_log_power"]["c"].get<double>() > 0);

    c.grid = "2:100:2";
    CHECK_THROWS_AS(cmd_table(c), UsageError);
    c.grid = "10:20:2";
    CHECK_THROWS_AS(cmd_fit(c), UsageError);
}

TEST_CASE("render formats") {
    RunConfig c;
    c.x = 8;
    const CommandOutput out = cmd_sum(c);
    const auto j = nlohmann::json::parse(render(out, OutputFormat::json));
    CHECK(j["schema_version"] == "1");
    CHECK(j["provenance"]["library_version"] == kLibraryVersion);
    CHECK(j.contains("timing"));
    CHECK(render(out, OutputFormat::csv).rfind("quantity,x,method", 0) == 0);
    CHECK(render(out, OutputFormat::text).find("23/2") != std::string::npos);
}

#include "shiftsum/record.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shiftsum {

nlohmann::json dyadic_to_json(const DyadicRational& value) {
    return {{"numerator", value.numerator().str()}, {"exponent", value.exponent()}};
}

DyadicRational dyadic_from_json(const nlohmann::json& j) {
    const std::string num = j.at("numerator").get<std::string>();
    const std::uint64_t exp = j.at("exponent").get<std::uint64_t>();
    DyadicRational out;
    try {
        out = DyadicRational(BigInt(num), exp);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad numerator: " + num);
    }
    if (out.exponent() != exp || out.numerator() != BigInt(num)) {
        throw std::invalid_argument("dyadic value is not in canonical form");
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

nlohmann::json to_json(const OutputRecord& r) {
    nlohmann::json j;
    j["schema_version"] = r.schema_version;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["warnings"] = r.warnings;
    j["provenance"] = {{"library_version", r.library_version}, {"seed", r.seed}};
    j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}};
    return j;
}

OutputRecord record_from_json(const nlohmann::json& j) {
    OutputRecord r;
    r.schema_version = j.at("schema_version").get<std::string>();
    if (r.schema_version != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema version " + r.schema_version);
    }
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.library_version = j.at("provenance").at("library_version").get<std::string>();
    r.seed = j.at("provenance").at("seed").get<std::uint64_t>();
    r.elapsed_seconds = j.at("timing").at("elapsed_seconds").get<double>();
    return r;
}

std::string deterministic_dump(const OutputRecord& record) {
    nlohmann::json j = to_json(record);
    j.erase("timing");
    return j.dump(2);
}

std::string render_csv(const CsvTable& table) {
    std::ostringstream os;
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
    for (const auto& f : table.footer) os << "# " << f << '\n';
    return os.str();
}

}  // namespace shiftsum

#pragma once

// Self-describing output records and their JSON / CSV forms.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "shiftsum/dyadic.hpp"

namespace shiftsum {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kLibraryVersion = "0.3.0";

/// {"numerator": "<decimal>", "exponent": e}. Never a float.
nlohmann::json dyadic_to_json(const DyadicRational& value);
DyadicRational dyadic_from_json(const nlohmann::json& j);

/// Shortest decimal that reads back to the same double; "." separator, no grouping.
std::string format_double(double v);

struct OutputRecord {
    std::string schema_version = kSchemaVersion;
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::string library_version = kLibraryVersion;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;  // the "timing" field; excluded from determinism checks

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

nlohmann::json to_json(const OutputRecord& record);
OutputRecord record_from_json(const nlohmann::json& j);

/// Serialized record with the timing field removed.
std::string deterministic_dump(const OutputRecord& record);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footer;  // written as "# ..." lines after the rows
};

std::string render_csv(const CsvTable& table);

}  // namespace shiftsum

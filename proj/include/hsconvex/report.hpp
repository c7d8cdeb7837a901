#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

namespace hsconvex {

enum class Format { Table, Json, Csv };

Format parse_format(const std::string& s);

/// A finished report: the full JSON document (insertion-ordered keys) plus
/// flat rows for the csv and table renderings. One row per (claim, bound)
/// pair; claims without bound chains emit a single row.
struct ReportDoc {
    nlohmann::ordered_json json;
    std::vector<std::array<std::string, 8>> rows;  // claim,item,provenance,lhs,rhs,slack,verdict,detail
    int exit_code = 0;
};

inline constexpr std::array<const char*, 8> kRowHeader = {
    "claim", "item", "provenance", "lhs", "rhs", "slack", "verdict", "detail"};

/// JSON value for a double: NaN and infinities become null (JSON has no
/// representation for them; verdicts carry the reason).
nlohmann::ordered_json json_number(double v);

/// %.17g rendering used for every numeric field in csv/table output.
std::string format_number(double v);

/// Serialize with stable key order and 17-significant-digit numbers; the
/// same report always produces identical bytes. The table format is
/// human-oriented and not a stability contract.
std::string serialize_report(const ReportDoc& report, Format format);

}  // namespace hsconvex

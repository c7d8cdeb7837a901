#include "hsconvex/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hsconvex/errors.hpp"

namespace hsconvex {

Format parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw UsageError("unknown format '" + s + "' (expected table, json, or csv)");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

namespace {

using ordered_json = nlohmann::ordered_json;

// Recursive writer: nlohmann's own dump() prints shortest-round-trip
// doubles; reports pin 17 significant digits instead.
void write_json(const ordered_json& v, std::string& out) {
    switch (v.type()) {
        case ordered_json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += ordered_json(it.key()).dump();
                out += ':';
                write_json(it.value(), out);
            }
            out += '}';
            break;
        }
        case ordered_json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ',';
                first = false;
                write_json(item, out);
            }
            out += ']';
            break;
        }
        case ordered_json::value_t::number_float: {
            double d = v.get<double>();
            if (!std::isfinite(d)) {
                out += "null";
            } else {
                out += format_number(d);
            }
            break;
        }
        default: out += v.dump(); break;
    }
}

std::string render_csv(const ReportDoc& report) {
    std::string out;
    for (std::size_t i = 0; i < kRowHeader.size(); ++i) {
        if (i) out += ',';
        out += kRowHeader[i];
    }
    out += '\n';
    auto escape = [](const std::string& field) {
        if (field.find_first_of(",\"\n") == std::string::npos) return field;
        std::string quoted = "\"";
        for (char c : field) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    };
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_table(const ReportDoc& report) {
    std::string out;
    if (report.json.contains("command"))
        out += "command: " + report.json["command"].get<std::string>() + "\n";
    if (report.json.contains("config")) {
        out += "config:";
        for (auto it = report.json["config"].begin(); it != report.json["config"].end(); ++it) {
            std::string v;
            write_json(it.value(), v);
            out += " " + it.key() + "=" + v;
        }
        out += '\n';
    }

    std::array<std::size_t, 8> width{};
    for (std::size_t i = 0; i < kRowHeader.size(); ++i)
        width[i] = std::string(kRowHeader[i]).size();
    for (const auto& row : report.rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

    auto emit = [&](const std::array<std::string, 8>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size()) out += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out += '\n';
    };
    std::array<std::string, 8> header;
    for (std::size_t i = 0; i < kRowHeader.size(); ++i) header[i] = kRowHeader[i];
    emit(header);
    for (const auto& row : report.rows) emit(row);
    return out;
}

}  // namespace

std::string serialize_report(const ReportDoc& report, Format format) {
    switch (format) {
        case Format::Json: {
            std::string out;
            write_json(report.json, out);
            out += '\n';
            return out;
        }
        case Format::Csv: return render_csv(report);
        case Format::Table: return render_table(report);
    }
    return {};
}

}  // namespace hsconvex

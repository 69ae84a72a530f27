#include "scatdeco/output.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace scatdeco {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

namespace {

std::string render(const Cell& c) {
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
    return std::get<std::string>(c);
}

void write_metadata(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& md) {
    for (const auto& [k, v] : md) os << "# " << k << ": " << v << '\n';
}

nlohmann::ordered_json metadata_json(const std::vector<std::pair<std::string, std::string>>& md) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : md) j[k] = v;
    return j;
}

} // namespace

void write_csv(std::ostream& os, const Table& t) {
    write_metadata(os, t.metadata);
    std::string header;
    for (const auto& c : t.columns) header += (header.empty() ? "" : ",") + c;
    for (std::size_t s = 0; s < t.series.size(); ++s) {
        if (s > 0) os << '\n';
        write_metadata(os, t.series[s].metadata);
        os << header << '\n';
        for (const auto& row : t.series[s].rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render(row[i]);
            os << '\n';
        }
    }
}

void write_json(std::ostream& os, const Table& t) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(t.metadata);
    j["columns"] = t.columns;
    j["series"] = nlohmann::ordered_json::array();
    for (const auto& s : t.series) {
        nlohmann::ordered_json js;
        js["metadata"] = metadata_json(s.metadata);
        js["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : s.rows) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::array();
            for (const auto& c : row) {
                if (const auto* d = std::get_if<double>(&c))
                    jr.push_back(*d == 0.0 ? 0.0 : *d);
                else
                    std::visit([&](const auto& v) { jr.push_back(v); }, c);
            }
            js["rows"].push_back(std::move(jr));
        }
        j["series"].push_back(std::move(js));
    }
    os << j.dump(2) << '\n';
}

void write_table(std::ostream& os, const Table& t, OutputFormat f) {
    if (f == OutputFormat::csv)
        write_csv(os, t);
    else
        write_json(os, t);
}

} // namespace scatdeco

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scatdeco {

using Cell = std::variant<long long, double, std::string>;

// One block of rows sharing a header, with its own metadata lines.
struct Series {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::vector<Cell>> rows;
};

// Command output: file-level metadata, a fixed column contract and one or
// more series.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<Series> series;
};

enum class OutputFormat { csv, json };

// Shortest "%.17g" rendering; identical input gives identical text.
std::string format_real(double v);

// '#'-prefixed metadata lines, then per series its metadata, the header line
// and the rows; series separated by a blank line.
void write_csv(std::ostream& os, const Table& t);

// {"metadata": {...}, "columns": [...], "series": [{"metadata": {...}, "rows": [[...]]}]}
void write_json(std::ostream& os, const Table& t);

void write_table(std::ostream& os, const Table& t, OutputFormat f);

} // namespace scatdeco

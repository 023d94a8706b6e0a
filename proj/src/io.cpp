#include "gmms/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gmms/errors.hpp"

namespace gmms {

std::string format_double(double v) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return {buf, static_cast<std::size_t>(len)};
}

namespace {

double parse_cell(std::string_view cell) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw SpecError("csv: bad numeric cell '" + std::string(cell) + "'");
    return v;
}

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        const std::size_t comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) break;
        line = line.substr(comma + 1);
    }
    return out;
}

} // namespace

void write_table_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
}

Table read_table_csv(std::istream& in) {
    Table table;
    std::string line;
    if (!std::getline(in, line)) throw SpecError("csv: missing header row");
    for (std::string_view cell : split_line(line)) table.columns.emplace_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (std::string_view cell : split_line(line)) row.push_back(parse_cell(cell));
        if (row.size() != table.columns.size())
            throw SpecError("csv: row width does not match header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_grid_csv(std::ostream& out, const PhaseSpaceGrid& grid) {
    out << "re,im,value\n";
    for (int i = 0; i < grid.resolution; ++i)
        for (int j = 0; j < grid.resolution; ++j)
            out << format_double(grid.re_at(i)) << ',' << format_double(grid.im_at(j)) << ','
                << format_double(grid.at(i, j)) << '\n';
}

PhaseSpaceGrid read_grid_csv(std::istream& in) {
    const Table table = read_table_csv(in);
    if (table.columns != std::vector<std::string>{"re", "im", "value"})
        throw SpecError("grid csv: unexpected header");
    const std::size_t points = table.rows.size();
    int res = static_cast<int>(std::llround(std::sqrt(static_cast<double>(points))));
    if (points == 0 || static_cast<std::size_t>(res) * res != points)
        throw SpecError("grid csv: point count is not a square");
    PhaseSpaceGrid grid;
    grid.resolution = res;
    grid.re_min = table.rows.front()[0];
    grid.re_max = table.rows.back()[0];
    grid.im_min = table.rows.front()[1];
    grid.im_max = table.rows.back()[1];
    grid.values.reserve(points);
    for (const auto& row : table.rows) grid.values.push_back(row[2]);
    return grid;
}

Table scan_table(std::span<const ScanRow> rows) {
    Table table;
    table.columns = {"param", "entropy_nats", "trace", "mean_photon"};
    for (const ScanRow& r : rows)
        table.rows.push_back({r.parameter, r.entropy_nats, r.trace, r.mean_photon});
    return table;
}

std::vector<ScanRow> scan_rows_from_table(const Table& table) {
    if (table.columns != std::vector<std::string>{"param", "entropy_nats", "trace", "mean_photon"})
        throw SpecError("scan csv: unexpected header");
    std::vector<ScanRow> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows) rows.push_back({r[0], r[1], r[2], r[3]});
    return rows;
}

} // namespace gmms

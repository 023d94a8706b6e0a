#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gmms/metrics.hpp"
#include "gmms/phasespace.hpp"

namespace gmms {

// Shortest faithful decimal with 17 significant digits; round-trips exactly.
std::string format_double(double v);

// Generic numeric table (CSV with a header row, LF line ends, 17-digit cells).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table_csv(std::ostream& out, const Table& table);
Table read_table_csv(std::istream& in);

// PhaseSpaceGrid CSV: header `re,im,value`, one row per point, Re-axis outer.
void write_grid_csv(std::ostream& out, const PhaseSpaceGrid& grid);
PhaseSpaceGrid read_grid_csv(std::istream& in);

Table scan_table(std::span<const ScanRow> rows);
std::vector<ScanRow> scan_rows_from_table(const Table& table);

} // namespace gmms

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hybrid_cycle {

/// Numeric table with a header row. Values are written with 17 significant
/// digits, which round-trips every double exactly.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_double(double v);

void write_csv(std::ostream& os, const CsvTable& table);

/// Throws std::runtime_error on ragged rows or non-numeric cells.
CsvTable read_csv(std::istream& is);

} // namespace hybrid_cycle

#include "hybrid_cycle/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hybrid_cycle {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const CsvTable& table) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        os << (i ? "," : "") << table.header[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

} // namespace

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
    table.header = split(line);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != table.header.size())
            throw std::runtime_error("csv: wrong column count on line " + std::to_string(lineno));
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str() || *end != '\0')
                throw std::runtime_error("csv: bad number '" + c + "' on line " + std::to_string(lineno));
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace hybrid_cycle

#pragma once

#include "qbounce/propagator.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qbounce::csv {

// Numeric table with a header row.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// 17 significant digits, so that parse_double(format_double(x)) == x.
std::string format_double(double value);
// Throws std::invalid_argument unless the whole field is a number.
double parse_double(std::string_view text);

void emit_csv(const Table& table, std::ostream& out);
void emit_csv(const Table& table, const std::string& path);
Table parse_csv(std::istream& in);
Table read_csv(const std::string& path);

// Grid as rows (axis1, axis2, re, im, caustic_flag) with the given axis names.
Table grid_table(const ComplexGrid& grid, const std::string& axis1_name, const std::string& axis2_name);

}  // namespace qbounce::csv

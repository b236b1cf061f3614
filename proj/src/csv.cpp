#include "qbounce/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qbounce::csv {

std::string format_double(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

double parse_double(std::string_view text)
{
    const std::string field(text);
    if (field.empty()) {
        throw std::invalid_argument("csv: empty numeric field");
    }
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) {
        throw std::invalid_argument("csv: not a number: '" + field + "'");
    }
    return value;
}

void emit_csv(const Table& table, std::ostream& out)
{
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_double(row[i]);
        }
        out << '\n';
    }
}

void emit_csv(const Table& table, const std::string& path)
{
    std::ofstream file(path, std::ios::binary);
    emit_csv(table, file);
    if (!file) {
        throw std::runtime_error("cannot write " + path);
    }
}

Table parse_csv(std::istream& in)
{
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("csv: missing header");
    }
    std::stringstream header(line);
    for (std::string field; std::getline(header, field, ',');) {
        table.header.push_back(field);
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream fields(line);
        for (std::string field; std::getline(fields, field, ',');) {
            row.push_back(parse_double(field));
        }
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("csv: row width does not match the header");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table read_csv(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot read " + path);
    }
    return parse_csv(file);
}

Table grid_table(const ComplexGrid& grid, const std::string& axis1_name, const std::string& axis2_name)
{
    Table table{{axis1_name, axis2_name, "re", "im", "caustic_flag"}, {}};
    table.rows.reserve(grid.values.size());
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const std::size_t idx = i * grid.cols() + j;
            const double flag = grid.caustic.empty() ? 0.0 : static_cast<double>(grid.caustic[idx]);
            table.rows.push_back({grid.axis1[i], grid.axis2[j], grid.values[idx].real(), grid.values[idx].imag(), flag});
        }
    }
    return table;
}

}  // namespace qbounce::csv

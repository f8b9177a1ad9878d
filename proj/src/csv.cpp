#include "pda/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pda {

std::string format_double(double value)
{
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return {buf.data(), ptr};
}

double parse_double(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("parse_double: not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

void CsvTable::add_row(std::vector<std::string> row)
{
    if (!header.empty() && row.size() != header.size()) {
        throw std::invalid_argument("CsvTable::add_row: row width does not match header");
    }
    rows.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("CsvTable: no column named '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const { return parse_double(rows.at(row).at(col)); }

void write_csv_table(std::ostream& out, const CsvTable& table)
{
    for (const auto& m : table.metadata) {
        out << "# " << m << '\n';
    }
    auto write_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    };
    if (!table.header.empty()) {
        write_row(table.header);
    }
    for (const auto& row : table.rows) {
        write_row(row);
    }
}

CsvTable read_csv_table(std::istream& in, bool has_header)
{
    CsvTable table;
    std::string line;
    bool header_pending = has_header;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::string_view meta(line);
            meta.remove_prefix(1);
            if (!meta.empty() && meta.front() == ' ') {
                meta.remove_prefix(1);
            }
            table.metadata.emplace_back(meta);
            continue;
        }
        auto cells = split_csv_line(line);
        if (header_pending) {
            table.header = std::move(cells);
            header_pending = false;
        } else {
            table.add_row(std::move(cells));
        }
    }
    return table;
}

} // namespace pda

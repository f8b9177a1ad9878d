#ifndef PDA_CSV_HPP
#define PDA_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pda {

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] std::string format_double(double value);
[[nodiscard]] double parse_double(std::string_view text);

/// Plain comma-separated table with an optional block of `# ` metadata lines
/// ahead of the header. Cells are kept as text so parse + write reproduces
/// the input byte for byte.
struct CsvTable {
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] double number(std::size_t row, std::size_t col) const;
};

void write_csv_table(std::ostream& out, const CsvTable& table);

/// The first non-comment line is the header when `has_header` is set.
[[nodiscard]] CsvTable read_csv_table(std::istream& in, bool has_header = true);

[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

} // namespace pda

#endif

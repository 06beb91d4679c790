#pragma once

#include <string>
#include <vector>

namespace maninlab {

// Tabular report: header + stringified rows. emit_csv writes LF line
// endings, '.' decimals and a stable column order regardless of locale.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_double(double v);
std::string to_csv(const Table& t);
void emit_plot_data(const Table& t, const std::string& path);

}  // namespace maninlab

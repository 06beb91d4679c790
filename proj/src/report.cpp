#include "maninlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace maninlab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    auto append_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    };
    append_row(t.header);
    for (const auto& r : t.rows) append_row(r);
    return out;
}

void emit_plot_data(const Table& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // binary: LF endings everywhere
    if (!f) throw std::runtime_error("emit_plot_data: cannot open " + path);
    f << to_csv(t);
    if (!f) throw std::runtime_error("emit_plot_data: write failed for " + path);
}

}  // namespace maninlab

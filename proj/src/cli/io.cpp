#include "volterra/cli/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace volterra::cli {

std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string render_csv(const std::vector<CsvColumn>& columns) {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c].name;
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
    for (const auto& col : columns) {
        if (col.values.size() != rows) {
            throw std::invalid_argument("csv columns have mismatched lengths");
        }
    }
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_sig17(columns[c].values[i]);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace volterra::cli

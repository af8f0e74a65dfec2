#pragma once

#include <string>
#include <vector>

namespace volterra::cli {

/// 17-significant-digit decimal rendering; round-trips IEEE doubles exactly.
std::string format_sig17(double v);

struct CsvColumn {
    std::string name;
    std::vector<double> values;
};

/// Header row plus one line per entry, comma separated, Unix newlines.
std::string render_csv(const std::vector<CsvColumn>& columns);

void write_file(const std::string& path, const std::string& content);

}  // namespace volterra::cli

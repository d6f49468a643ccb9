#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace intprior {

// Minimal CSV reader: comma-delimited, header row required, UTF-8, no quoting
// (the packaged datasets and typical epidemiological tables need none).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);
CsvTable read_csv_text(const std::string& text);

}  // namespace intprior

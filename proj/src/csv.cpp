#include "intprior/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace intprior {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == name) return static_cast<int>(j);
    }
    return -1;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty input");
    table.header = split_line(line);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_line(line);
        if (fields.size() != table.header.size()) {
            throw std::runtime_error("csv: line " + std::to_string(lineno) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    return read_csv(in);
}

CsvTable read_csv_text(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

}  // namespace intprior

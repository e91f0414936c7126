#include "chiplink/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace chiplink {

TableRow::TableRow(std::shared_ptr<const Columns> columns,
                   std::vector<std::string> fields, std::string context)
    : columns_(std::move(columns)), fields_(std::move(fields)),
      context_(std::move(context)) {}

const std::string& TableRow::str(const std::string& column) const {
    auto it = columns_->find(column);
    if (it == columns_->end() || it->second >= static_cast<int>(fields_.size()))
        throw ParseError(context_ + ": missing column '" + column + "'");
    return fields_[static_cast<std::size_t>(it->second)];
}

double TableRow::num(const std::string& column) const {
    const std::string& s = str(column);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(context_ + ": column '" + column + "' is not a number: '" + s + "'");
    }
}

int TableRow::integer(const std::string& column) const {
    const double v = num(column);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ParseError(context_ + ": column '" + column + "' is not an integer");
    return i;
}

bool TableRow::has(const std::string& column) const {
    auto it = columns_->find(column);
    return it != columns_->end() && it->second < static_cast<int>(fields_.size()) &&
           fields_[static_cast<std::size_t>(it->second)] != "-";
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string field;
    while (ss >> field) out.push_back(field);
    return out;
}

} // namespace

std::vector<TableRow> read_table(std::istream& in, const std::string& source_name) {
    std::vector<TableRow> rows;
    std::shared_ptr<TableRow::Columns> columns;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (!columns) {
            columns = std::make_shared<TableRow::Columns>();
            for (std::size_t i = 0; i < fields.size(); ++i)
                (*columns)[fields[i]] = static_cast<int>(i);
            continue;
        }
        rows.emplace_back(columns, std::move(fields),
                          source_name + ":" + std::to_string(lineno));
    }
    return rows;
}

std::vector<TableRow> read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_table(in, path);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace chiplink

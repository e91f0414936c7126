#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "chiplink/errors.hpp"

namespace chiplink {

/// One data row of a whitespace-delimited table, addressed by header column.
class TableRow {
public:
    using Columns = std::unordered_map<std::string, int>;

    TableRow(std::shared_ptr<const Columns> columns, std::vector<std::string> fields,
             std::string context);

    const std::string& str(const std::string& column) const;
    double num(const std::string& column) const;
    int integer(const std::string& column) const;
    bool has(const std::string& column) const;

    const std::string& context() const { return context_; }

private:
    std::shared_ptr<const Columns> columns_;
    std::vector<std::string> fields_;
    std::string context_; // "file:line" for error messages
};

/// Reads a '#'-commented, tab-or-space separated table with one header line.
/// Fields may not contain whitespace; link names etc. use underscores.
std::vector<TableRow> read_table(std::istream& in, const std::string& source_name);
std::vector<TableRow> read_table_file(const std::string& path);

/// Full-precision number formatting (round-trips through parsing).
std::string format_full(double v);

} // namespace chiplink

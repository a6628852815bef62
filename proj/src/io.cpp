#include "quartic/io.hpp"

#include <cstdio>

namespace quartic {

const char* kLibraryVersion = "0.1.0";

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::header_line(const std::string& line) { os_ << "# " << line << "\n"; }

void CsvWriter::config_echo(const std::map<std::string, std::string>& kv) {
    os_ << "# version=" << kLibraryVersion << "\n";
    for (const auto& [k, v] : kv) os_ << "# " << k << "=" << v << "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i)
        os_ << names[i] << (i + 1 < names.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i)
        os_ << format(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::string& line) { os_ << line << "\n"; }

}  // namespace quartic

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace quartic {

// CSV writer: '.' decimal point, 17 significant digits, '#'-prefixed header
// lines echoing the run configuration.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void header_line(const std::string& line);
    void config_echo(const std::map<std::string, std::string>& kv);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);

    static std::string format(double v);

  private:
    std::ostream& os_;
};

extern const char* kLibraryVersion;

}  // namespace quartic

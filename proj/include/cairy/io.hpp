#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace cairy::io {

/// Shortest-round-trip, locale-independent decimal rendering of a double
/// (17 significant digits, '.' separator).
std::string fmt(double v);

/// Minimal CSV writer: header on construction, one row per call. All numeric
/// output goes through fmt() so files are byte-reproducible.
class CsvWriter {
  public:
    CsvWriter(std::ostream& os, std::initializer_list<const char*> header);
    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);

  private:
    std::ostream& os_;
};

} // namespace cairy::io

#include "cairy/io.hpp"

#include <charconv>
#include <ostream>

namespace cairy::io {

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<const char*> header) : os_(os) {
    bool first = true;
    for (const char* h : header) {
        if (!first) os_ << ',';
        os_ << h;
        first = false;
    }
    os_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
    bool first = true;
    for (double v : values) {
        if (!first) os_ << ',';
        os_ << fmt(v);
        first = false;
    }
    os_ << '\n';
}

} // namespace cairy::io

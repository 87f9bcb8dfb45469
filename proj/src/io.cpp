#include "moranlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace moranlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void CsvWriter::header(const std::vector<std::string>& names) {
    raw_row(names);
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_g17(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

std::string resolve_output_path(const std::string& path) {
    if (path.empty()) throw std::invalid_argument("empty output path");
    if (path.front() == '/') return path;
    const char* dir = std::getenv("MORANLAB_OUTDIR");
    if (dir == nullptr || dir[0] == '\0') return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

}  // namespace moranlab

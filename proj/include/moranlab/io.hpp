#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace moranlab {

// 17 significant digits, C locale: enough to round-trip any double, and
// byte-stable across runs.
std::string format_g17(double v);

// Minimal CSV emitter: one header row, then numeric rows through format_g17.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
};

// Resolve an output path against the directory in the MORANLAB_OUTDIR
// environment variable (used when the path is relative; absolute paths pass
// through).
std::string resolve_output_path(const std::string& path);

}  // namespace moranlab

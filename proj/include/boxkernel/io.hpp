#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "boxkernel/kernel.hpp"

namespace boxkernel::io {

/// Shortest round-trip decimal form ("%.17g").
std::string format_real(double x);

/// "re+imj" / "re-imj".
std::string format_complex(cplx z);
cplx parse_complex(const std::string& text);

/// Row-oriented CSV writer with a mandatory header. Rows must match the header width.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> header);

  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(double x);
  CsvWriter& cell(int x);
  CsvWriter& cell(cplx z) { return cell(format_complex(z)); }
  void end_row();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
  std::size_t width_;
  std::vector<std::string> row_;
};

/// Parses a CSV file into header + string cells. Blank lines are ignored.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

/// `node,re,im`
void write_signal(const std::filesystem::path& path, const Signal& f);
/// Node column must match the grid's nodes to 1e-9.
Signal read_signal(const std::filesystem::path& path, const Grid& grid);

/// One row per grid row, entries as "re+imj"; no header row.
void write_kernel_table(const std::filesystem::path& path, const CMatrix& table);
CMatrix read_kernel_table(const std::filesystem::path& path);

}  // namespace boxkernel::io

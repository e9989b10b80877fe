#include "boxkernel/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace boxkernel::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument(context + ": cannot parse '" + text + "' as a number");
  }
  if (used != text.size()) throw InvalidArgument(context + ": trailing characters in '" + text + "'");
  return v;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cplx z) {
  std::string out = format_real(z.real());
  const double im = z.imag();
  out += std::signbit(im) ? '-' : '+';
  out += format_real(std::abs(im));
  out += 'j';
  return out;
}

cplx parse_complex(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw InvalidArgument("empty complex literal");
  if (text.back() != 'j' && text.back() != 'i') return {parse_real(text, "complex literal"), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  if (split_at == std::string::npos) {
    if (body.empty() || body == "+" || body == "-") return {0.0, body == "-" ? -1.0 : 1.0};
    return {0.0, parse_real(body, "complex literal")};
  }
  const std::string re = body.substr(0, split_at);
  std::string im = body.substr(split_at);
  if (im == "+" || im == "-") im += "1";
  return {parse_real(re, "complex literal"), parse_real(im, "complex literal")};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> header)
    : out_(path), path_(path), width_(header.size()) {
  if (!out_) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  row_ = std::move(header);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  row_.push_back(text);
  return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_real(x)); }

CsvWriter& CsvWriter::cell(int x) { return cell(std::to_string(x)); }

void CsvWriter::end_row() {
  if (row_.size() != width_) {
    std::ostringstream os;
    os << path_.string() << ": row has " << row_.size() << " cells, header has " << width_;
    throw InvalidArgument(os.str());
  }
  for (std::size_t k = 0; k < row_.size(); ++k) {
    if (k) out_ << ',';
    out_ << row_[k];
  }
  out_ << '\n';
  row_.clear();
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (first) {
      t.header = split(line);
      first = false;
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

void write_signal(const std::filesystem::path& path, const Signal& f) {
  CsvWriter w(path, {"node", "re", "im"});
  for (int k = 0; k < f.size(); ++k) w.cell(f.grid().node(k)).cell(f[k].real()).cell(f[k].imag()).end_row();
}

Signal read_signal(const std::filesystem::path& path, const Grid& grid) {
  const CsvTable t = read_csv(path);
  const std::string ctx = path.string();
  if (t.header != std::vector<std::string>{"node", "re", "im"})
    throw InvalidArgument(ctx + ": expected header node,re,im");
  if (static_cast<int>(t.rows.size()) != grid.size()) {
    std::ostringstream os;
    os << ctx << ": " << t.rows.size() << " rows for a grid of " << grid.size() << " nodes";
    throw InvalidArgument(os.str());
  }
  CVector v(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const auto& row = t.rows[k];
    if (row.size() != 3) throw InvalidArgument(ctx + ": every row needs node,re,im");
    const double node = parse_real(row[0], ctx);
    if (std::abs(node - grid.node(k)) > 1e-9) {
      std::ostringstream os;
      os << ctx << ": row " << k << " node " << node << " does not match grid node " << grid.node(k);
      throw InvalidArgument(os.str());
    }
    v[k] = {parse_real(row[1], ctx), parse_real(row[2], ctx)};
  }
  return Signal(grid, std::move(v));
}

void write_kernel_table(const std::filesystem::path& path, const CMatrix& table) {
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < table.cols(); ++j) header.push_back("v" + std::to_string(j));
  CsvWriter w(path, std::move(header));
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.cols(); ++j) w.cell(table(i, j));
    w.end_row();
  }
}

CMatrix read_kernel_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::vector<std::vector<cplx>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (first) {
      first = false;
      // optional header row of column labels
      if (!cells.empty() && !cells[0].empty() && std::isalpha(static_cast<unsigned char>(cells[0][0])))
        continue;
    }
    std::vector<cplx> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_complex(c));
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      std::ostringstream os;
      os << path.string() << ": kernel table must be square (row " << i << " has " << rows[i].size()
         << " entries, expected " << n << ")";
      throw InvalidArgument(os.str());
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace boxkernel::io

#include "sic/report.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "sic/error.h"

namespace sic {
namespace {

std::string FormatDouble(double v, int precision) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

// Shortest round-trip-safe spelling for targets such as 40 or 37.5.
std::string FormatTarget(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ParseDouble(const std::string& field, const std::string& where) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kIo, where + ": bad number '" + field + "'");
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

// Published reference ratios: 512x512 images, 16x16 blocks, 40 dB target.
// Columns follow kMethodOrder.
constexpr ReferenceRow kReference[] = {
    {"boat", {7.05, 6.89, 3.63, 3.65}},   {"bridge", {4.24, 3.97, 2.06, 2.2}},
    {"film", {9.72, 9.26, 4.53, 4.8}},    {"lena", {11.78, 11.7, 6.5, 6.97}},
    {"mandril", {3.72, 3.5, 1.91, 1.90}}, {"peppers", {8.9, 8.62, 4.36, 3.39}},
};

}  // namespace

bool IsKnownMethod(std::string_view method) {
  return std::find(std::begin(kMethodOrder), std::end(kMethodOrder), method) !=
         std::end(kMethodOrder);
}

double SparsityReport::CompressionRatio() const {
  if (total_atoms == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(pixels) / static_cast<double>(total_atoms);
}

ReportRow ToRow(const SparsityReport& report) {
  return {report.image,       report.method,
          report.total_atoms, report.CompressionRatio(),
          report.psnr,        report.target_psnr};
}

std::string FormatReportRow(const ReportRow& row) {
  return row.image + "," + row.method + "," + std::to_string(row.atoms) + "," +
         FormatDouble(row.compression_ratio, 4) + "," +
         FormatDouble(row.psnr, 4) + "," + FormatTarget(row.target_psnr);
}

void WriteReportCsv(std::ostream& os, const std::vector<ReportRow>& rows) {
  os << kReportHeader << '\n';
  for (const ReportRow& r : rows) os << FormatReportRow(r) << '\n';
}

void AppendReportCsv(const std::string& path,
                     const std::vector<ReportRow>& rows) {
  bool fresh = true;
  {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    fresh = !in || in.tellg() == 0;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorKind::kIo, "cannot write report " + path);
  if (fresh) out << kReportHeader << '\n';
  for (const ReportRow& r : rows) out << FormatReportRow(r) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "error writing report " + path);
}

std::vector<ReportRow> ParseReportCsv(std::string_view text,
                                      const std::string& source) {
  std::vector<ReportRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != kReportHeader) {
        throw Error(ErrorKind::kIo, where + ": unexpected report header");
      }
      header_seen = true;
      continue;
    }
    if (line == kReportHeader) continue;  // concatenated reports
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != 6) {
      throw Error(ErrorKind::kIo, where + ": expected 6 fields, got " +
                                      std::to_string(f.size()));
    }
    ReportRow row;
    row.image = f[0];
    row.method = f[1];
    try {
      std::size_t used = 0;
      row.atoms = std::stoull(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument("atoms");
    } catch (const std::exception&) {
      throw Error(ErrorKind::kIo, where + ": bad atom count '" + f[2] + "'");
    }
    row.compression_ratio = ParseDouble(f[3], where);
    row.psnr = ParseDouble(f[4], where);
    row.target_psnr = ParseDouble(f[5], where);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error(ErrorKind::kIo, source + ": empty report");
  return rows;
}

std::vector<ReportRow> ReadReportCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open report " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseReportCsv(ss.str(), path);
}

ResultTable MergeReports(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw Error(ErrorKind::kUsage, "no report rows to merge");
  ResultTable table;
  table.target_psnr = rows.front().target_psnr;
  std::vector<std::string> extra_methods;
  for (const ReportRow& r : rows) {
    if (r.target_psnr != table.target_psnr) {
      throw Error(ErrorKind::kUsage,
                  "inconsistent PSNR targets across reports: " +
                      FormatTarget(table.target_psnr) + " vs " +
                      FormatTarget(r.target_psnr) + " (" + r.image + ", " +
                      r.method + ")");
    }
    if (std::find(table.images.begin(), table.images.end(), r.image) ==
        table.images.end()) {
      table.images.push_back(r.image);
    }
    if (!IsKnownMethod(r.method) &&
        std::find(extra_methods.begin(), extra_methods.end(), r.method) ==
            extra_methods.end()) {
      extra_methods.push_back(r.method);
    }
  }
  for (std::string_view m : kMethodOrder) {
    const bool present =
        std::any_of(rows.begin(), rows.end(),
                    [&](const ReportRow& r) { return r.method == m; });
    if (present) table.methods.emplace_back(m);
  }
  table.methods.insert(table.methods.end(), extra_methods.begin(),
                       extra_methods.end());

  table.cr.assign(table.images.size(),
                  std::vector<std::optional<double>>(table.methods.size()));
  for (const ReportRow& r : rows) {
    const auto ii =
        std::find(table.images.begin(), table.images.end(), r.image) -
        table.images.begin();
    const auto mi =
        std::find(table.methods.begin(), table.methods.end(), r.method) -
        table.methods.begin();
    table.cr[ii][mi] = r.compression_ratio;
  }
  return table;
}

void WriteTableText(std::ostream& os, const ResultTable& table) {
  std::size_t image_w = 5;
  for (const std::string& s : table.images)
    image_w = std::max(image_w, s.size());
  std::vector<std::size_t> col_w;
  for (const std::string& m : table.methods) {
    col_w.push_back(std::max<std::size_t>(m.size(), 8));
  }

  os << "Compression ratio at PSNR " << FormatTarget(table.target_psnr)
     << " dB\n";
  os << std::left << std::setw(static_cast<int>(image_w)) << "image";
  for (std::size_t m = 0; m < table.methods.size(); ++m) {
    os << "  " << std::right << std::setw(static_cast<int>(col_w[m]))
       << table.methods[m];
  }
  os << '\n';
  for (std::size_t i = 0; i < table.images.size(); ++i) {
    os << std::left << std::setw(static_cast<int>(image_w)) << table.images[i];
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
      const std::optional<double>& v = table.cr[i][m];
      os << "  " << std::right << std::setw(static_cast<int>(col_w[m]))
         << (v ? FormatDouble(*v, 2) : std::string("-"));
    }
    os << '\n';
  }
}

void WriteTableCsv(std::ostream& os, const ResultTable& table) {
  os << "image";
  for (const std::string& m : table.methods) os << ',' << m;
  os << '\n';
  for (std::size_t i = 0; i < table.images.size(); ++i) {
    os << table.images[i];
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
      os << ',';
      if (table.cr[i][m]) os << FormatDouble(*table.cr[i][m], 4);
    }
    os << '\n';
  }
}

std::span<const ReferenceRow> ReferenceTable() { return kReference; }

std::optional<ReferenceRow> FindReference(std::string_view image) {
  std::string key = Lower(image);
  if (key == "mandrill" || key == "baboon") key = "mandril";
  if (key == "film clip" || key == "filmclip" || key == "film_clip") {
    key = "film";
  }
  for (const ReferenceRow& r : kReference) {
    if (r.image == key) return r;
  }
  return std::nullopt;
}

void WriteRegression(std::ostream& os, const ResultTable& table) {
  os << "image,method,measured_CR,published_CR,ratio\n";
  for (std::size_t i = 0; i < table.images.size(); ++i) {
    const std::optional<ReferenceRow> ref = FindReference(table.images[i]);
    if (!ref) continue;
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
      const auto pos = std::find(std::begin(kMethodOrder),
                                 std::end(kMethodOrder), table.methods[m]);
      if (pos == std::end(kMethodOrder) || !table.cr[i][m]) continue;
      const double published = ref->cr[pos - std::begin(kMethodOrder)];
      const double measured = *table.cr[i][m];
      os << table.images[i] << ',' << table.methods[m] << ','
         << FormatDouble(measured, 4) << ',' << FormatDouble(published, 2)
         << ',' << FormatDouble(measured / published, 4) << '\n';
    }
  }
}

}  // namespace sic

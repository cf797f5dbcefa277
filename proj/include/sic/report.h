#ifndef SIC_REPORT_H_
#define SIC_REPORT_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sic {

// Method names used in reports and on the command line.
inline constexpr std::string_view kMethodOmpLinear = "omp_linear";
inline constexpr std::string_view kMethodOmpCubic = "omp_cubic";
inline constexpr std::string_view kMethodDct = "dct";
inline constexpr std::string_view kMethodCdf97 = "cdf97";

// Canonical column order for merged tables.
inline constexpr std::string_view kMethodOrder[] = {
    kMethodOmpLinear, kMethodOmpCubic, kMethodDct, kMethodCdf97};

bool IsKnownMethod(std::string_view method);

// Sparsity outcome for one image under one method. The compression ratio
// is pixels / retained atoms (or coefficients).
struct SparsityReport {
  std::string image;
  std::string method;
  std::size_t pixels = 0;
  std::size_t total_atoms = 0;
  double psnr = 0.0;                                   // achieved
  double target_psnr = 0.0;                            // requested
  std::map<std::size_t, std::size_t> atoms_per_block;  // count -> blocks

  double CompressionRatio() const;
};

// One CSV row as stored on disk.
struct ReportRow {
  std::string image;
  std::string method;
  std::size_t atoms = 0;
  double compression_ratio = 0.0;
  double psnr = 0.0;
  double target_psnr = 0.0;

  bool operator==(const ReportRow&) const = default;
};

ReportRow ToRow(const SparsityReport& report);

inline constexpr std::string_view kReportHeader =
    "image,dictionary,atoms,CR,psnr_achieved,target_psnr";

// "lena,omp_linear,22000,11.9156,40.0001,40" style line (no newline).
std::string FormatReportRow(const ReportRow& row);
void WriteReportCsv(std::ostream& os, const std::vector<ReportRow>& rows);
// Appends rows to `path`, writing the header first if the file is new or
// empty.
void AppendReportCsv(const std::string& path,
                     const std::vector<ReportRow>& rows);
std::vector<ReportRow> ParseReportCsv(std::string_view text,
                                      const std::string& source = "report");
std::vector<ReportRow> ReadReportCsv(const std::string& path);

// Images as rows, methods as columns.
struct ResultTable {
  double target_psnr = 0.0;
  std::vector<std::string> images;   // first-appearance order
  std::vector<std::string> methods;  // canonical order, present ones only
  // cr[image][method]; absent when a report did not cover the pair.
  std::vector<std::vector<std::optional<double>>> cr;
};

// Throws Error(kUsage) when rows disagree on target_psnr or are empty.
// A later row for the same (image, method) replaces an earlier one.
ResultTable MergeReports(const std::vector<ReportRow>& rows);

void WriteTableText(std::ostream& os, const ResultTable& table);
void WriteTableCsv(std::ostream& os, const ResultTable& table);

// Published compression ratios at 40 dB (16x16 blocks) for the six
// standard test images, columns in kMethodOrder.
struct ReferenceRow {
  std::string_view image;
  double cr[4];
};
std::span<const ReferenceRow> ReferenceTable();
// Case-insensitive lookup; accepts "mandrill"/"baboon" for "mandril" and
// "film clip"/"filmclip" for "film".
std::optional<ReferenceRow> FindReference(std::string_view image);

// Measured / published ratio per cell, for images with a reference row.
void WriteRegression(std::ostream& os, const ResultTable& table);

}  // namespace sic

#endif  // SIC_REPORT_H_

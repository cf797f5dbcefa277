#include "cli.h"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sic/baselines.h"
#include "sic/codec.h"
#include "sic/dictionary.h"
#include "sic/error.h"
#include "sic/image.h"
#include "sic/report.h"

namespace sic::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::vector<std::string> inputs;
  std::string method;
  int block_size = 16;
  double target_psnr = 40.0;
  int levels = kDefaultWaveletLevels;
  int workers = 1;
  std::string trace_path;
  std::string out_dir = ".";
  std::string report_path;
};

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kExitUsage;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kNumerical:
      return kExitNumerical;
  }
  return kExitNumerical;
}

void ValidateConfig(const RunConfig& cfg) {
  if (!IsKnownMethod(cfg.method)) {
    throw Error(ErrorKind::kUsage, "unknown method '" + cfg.method + "'");
  }
  if (!(cfg.target_psnr > 0.0)) {
    throw Error(ErrorKind::kUsage, "--psnr must be positive");
  }
  if (cfg.block_size < 1) {
    throw Error(ErrorKind::kUsage, "--block must be positive");
  }
  if (const auto id = DictionaryFromName(cfg.method)) {
    if (cfg.block_size < MaxAtomSupport(*id)) {
      throw Error(ErrorKind::kUsage,
                  "--block " + std::to_string(cfg.block_size) +
                      " is smaller than the largest atom support (" +
                      std::to_string(MaxAtomSupport(*id)) + ") of " +
                      cfg.method);
    }
    if (cfg.block_size > kMaxBlockSize) {
      throw Error(ErrorKind::kUsage,
                  "--block may not exceed " + std::to_string(kMaxBlockSize));
    }
  }
  if (cfg.method == kMethodCdf97 && (cfg.levels < 1 || cfg.levels > 30)) {
    throw Error(ErrorKind::kUsage, "--levels must be in [1, 30]");
  }
}

int CmdEncode(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ValidateConfig(cfg);
  std::optional<Dictionary2D> dict;
  if (const auto id = DictionaryFromName(cfg.method)) {
    dict.emplace(AssembleDictionary(*id, cfg.block_size));
  }
  std::unique_ptr<std::ofstream> trace;
  if (!cfg.trace_path.empty() && dict) {
    trace = std::make_unique<std::ofstream>(cfg.trace_path);
    if (!*trace) {
      throw Error(ErrorKind::kIo, "cannot write trace " + cfg.trace_path);
    }
    *trace << kTraceHeader << '\n';
  }

  out << kReportHeader << '\n';
  for (const std::string& path : cfg.inputs) {
    const std::string stem = fs::path(path).stem().string();
    try {
      const ImageGray8 img = ReadPgm(path);
      SparsityReport report;
      if (dict) {
        EncodeOptions options;
        options.workers = cfg.workers;
        options.image_name = stem;
        options.collect_trace = trace != nullptr;
        EncodeResult result = Encode(img, *dict, cfg.target_psnr, options);
        const fs::path sic_path = fs::path(cfg.out_dir) / (stem + ".sic");
        WriteFileBytes(sic_path.string(), SerializeContainer(result.encoded));
        if (trace) WriteTraceCsv(*trace, stem, *dict, result.trace);
        report = std::move(result.report);
      } else {
        report = RunBaseline(img, cfg.method, cfg.target_psnr, cfg.block_size,
                             cfg.levels);
        report.image = stem;
      }
      const ReportRow row = ToRow(report);
      out << FormatReportRow(row) << '\n';
      if (!cfg.report_path.empty()) AppendReportCsv(cfg.report_path, {row});
    } catch (const Error& e) {
      err << "error: " << path << ": " << e.what() << '\n';
      return ExitCodeFor(e.kind());
    }
  }
  return kExitOk;
}

int CmdDecode(const std::string& sic_path, const std::string& method,
              std::string out_path, const std::string& original, int workers,
              std::ostream& out, std::ostream& err) {
  try {
    const EncodedImage enc = ParseContainer(ReadFileBytes(sic_path));
    if (!method.empty()) {
      const auto id = DictionaryFromName(method);
      if (!id) {
        throw Error(ErrorKind::kUsage,
                    "--method must be omp_linear or omp_cubic for decoding");
      }
      if (*id != enc.header.dictionary) {
        throw Error(ErrorKind::kUsage,
                    "dictionary mismatch: container uses " +
                        std::string(DictionaryName(enc.header.dictionary)) +
                        ", requested " + method);
      }
    }
    const Dictionary2D dict(AssembleDictionary(
        enc.header.dictionary, static_cast<int>(enc.header.block_size)));
    const RealImage approx = Decode(enc, dict, workers);
    const ImageGray8 exported = ClampToGray8(approx);
    if (out_path.empty()) {
      fs::path p(sic_path);
      out_path =
          (p.parent_path() / (p.stem().string() + "_decoded.pgm")).string();
    }
    WritePgm(out_path, exported);
    out << "wrote " << out_path << '\n';
    if (!original.empty()) {
      const ImageGray8 orig = ReadPgm(original);
      char line[128];
      std::snprintf(line, sizeof(line), "psnr %.4f dB (8-bit export %.4f dB)\n",
                    Psnr(orig, approx), Psnr(orig, exported));
      out << line;
    }
  } catch (const Error& e) {
    err << "error: " << sic_path << ": " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  }
  return kExitOk;
}

int CmdTable(const std::vector<std::string>& reports,
             const std::string& csv_path, bool reference, std::ostream& out,
             std::ostream& err) {
  try {
    std::vector<ReportRow> rows;
    for (const std::string& path : reports) {
      std::vector<ReportRow> r = ReadReportCsv(path);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    const ResultTable table = MergeReports(rows);
    WriteTableText(out, table);
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path);
      if (!csv) throw Error(ErrorKind::kIo, "cannot write " + csv_path);
      WriteTableCsv(csv, table);
    }
    if (reference) {
      out << '\n';
      WriteRegression(out, table);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  }
  return kExitOk;
}

int CmdDict(const std::string& method, int block, std::ostream& out,
            std::ostream& err) {
  try {
    const auto id = DictionaryFromName(method);
    if (!id) {
      throw Error(ErrorKind::kUsage,
                  "--method must be omp_linear or omp_cubic");
    }
    AssembleDictionary(*id, block).WriteCsv(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{
      "Sparse image representation with cosine/B-spline "
      "dictionaries and Orthogonal Matching Pursuit"};
  app.require_subcommand(1);

  RunConfig cfg;
  CLI::App* encode =
      app.add_subcommand("encode", "Approximate images to a PSNR target");
  encode->add_option("--method", cfg.method, "omp_linear|omp_cubic|dct|cdf97")
      ->required();
  encode->add_option("--block", cfg.block_size, "Block side length")
      ->capture_default_str();
  encode->add_option("--psnr", cfg.target_psnr, "Target PSNR in dB")
      ->capture_default_str();
  encode->add_option("--levels", cfg.levels, "Wavelet decomposition levels")
      ->capture_default_str();
  encode
      ->add_option("--workers", cfg.workers,
                   "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();
  encode->add_option("--trace", cfg.trace_path,
                     "Write per-iteration pursuit trace CSV");
  encode->add_option("--out", cfg.out_dir, "Directory for .sic files")
      ->capture_default_str();
  encode->add_option("--report", cfg.report_path,
                     "Append report rows to this CSV");
  encode->add_option("inputs", cfg.inputs, "Input PGM images")->required();

  std::string sic_path, decode_method, decode_out, original;
  int decode_workers = 1;
  CLI::App* decode =
      app.add_subcommand("decode", "Reconstruct a PGM from a .sic file");
  decode->add_option("input", sic_path, ".sic container")->required();
  decode->add_option("--method", decode_method,
                     "Expected dictionary (omp_linear|omp_cubic)");
  decode->add_option("--out", decode_out, "Output PGM path");
  decode->add_option("--original", original,
                     "Original PGM; prints the achieved PSNR");
  decode->add_option("--workers", decode_workers, "Worker threads");

  std::vector<std::string> reports;
  std::string table_csv;
  bool reference = false;
  CLI::App* table =
      app.add_subcommand("table", "Merge report CSVs into one table");
  table->add_option("reports", reports, "Report CSV files")->required();
  table->add_option("--csv", table_csv, "Also write the table as CSV");
  table->add_flag("--reference", reference,
                  "Compare against the published reference ratios");

  std::string dict_method = std::string(kMethodOmpLinear);
  int dict_block = 16;
  CLI::App* dict =
      app.add_subcommand("dict", "Dump a 1D dictionary as CSV (debug)");
  dict->add_option("--method", dict_method, "omp_linear|omp_cubic")
      ->capture_default_str();
  dict->add_option("--block", dict_block, "Block side length")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*encode) {
      return CmdEncode(cfg, out, err);
    }
    if (*decode) {
      return CmdDecode(sic_path, decode_method, decode_out, original,
                       decode_workers, out, err);
    }
    if (*table) return CmdTable(reports, table_csv, reference, out, err);
    if (*dict) return CmdDict(dict_method, dict_block, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace sic::cli

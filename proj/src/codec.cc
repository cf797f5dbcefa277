#include "sic/codec.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <unordered_set>

#include "sic/error.h"
#include "sic/parallel.h"

namespace sic {
namespace {

class ByteWriter {
 public:
  void Bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void U16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back((v >> (8 * i)) & 0xff);
  }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back((v >> (8 * i)) & 0xff);
  }
  void F64(double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, sizeof(v));
    for (int i = 0; i < 8; ++i) out_.push_back((v >> (8 * i)) & 0xff);
  }
  std::vector<std::uint8_t> Take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint64_t Uint(int width, const char* what) {
    Need(width, what);
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += width;
    return v;
  }
  double F64(const char* what) {
    const std::uint64_t v = Uint(8, what);
    double d;
    std::memcpy(&d, &v, sizeof(d));
    return d;
  }
  void Need(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw CorruptContainer(pos_,
                             std::string("truncated while reading ") + what);
    }
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void CheckTiling(int width, int height, int block) {
  if (width <= 0 || height <= 0 || width % block != 0 || height % block != 0) {
    throw Error(ErrorKind::kUsage, "image " + std::to_string(width) + "x" +
                                       std::to_string(height) +
                                       " does not tile into blocks of " +
                                       std::to_string(block));
  }
}

}  // namespace

std::size_t EncodedImage::TotalAtoms() const {
  std::size_t n = 0;
  for (const SparseBlock& b : blocks) n += b.entries.size();
  return n;
}

std::size_t BaseAtomCount(DictionaryId id, int block_len) {
  const int m = id == DictionaryId::kDct2xLinear ? 2 : 4;
  std::size_t n = 2 * static_cast<std::size_t>(block_len);
  for (int d = 1; d <= 3; ++d) n += block_len + m * d - 2;
  return n;
}

Matrix ReconstructBlock(const SparseBlock& block, const Dictionary2D& dict) {
  const int len = dict.block_len();
  Matrix out(len, len);
  const Dictionary1D& base = dict.base();
  for (const SparseEntry& e : block.entries) {
    const auto [i, j] = dict.Address(e.address);
    const Atom1D& u = base[i];
    const Atom1D& v = base[j];
    for (int r = u.support_start; r < u.support_start + u.support_len; ++r) {
      const double w = e.coefficient * u.values[r];
      for (int c = v.support_start; c < v.support_start + v.support_len; ++c) {
        out(r, c) += w * v.values[c];
      }
    }
  }
  return out;
}

EncodeResult Encode(const ImageGray8& img, const Dictionary2D& dict,
                    double target_db, const EncodeOptions& options) {
  const int block = dict.block_len();
  CheckTiling(img.width, img.height, block);
  if (!(target_db > 0.0)) {
    throw Error(ErrorKind::kUsage, "target PSNR must be positive");
  }

  EncodeResult result;
  EncodedHeader& header = result.encoded.header;
  header.dictionary = dict.id();
  header.width = img.width;
  header.height = img.height;
  header.block_size = block;
  header.target_psnr = target_db;

  const std::size_t bx_count = header.BlocksX();
  const std::size_t count = header.BlockCount();
  const StoppingRule rule =
      StoppingRule::Both(PsnrToBlockSse(target_db, block),
                         static_cast<std::size_t>(block) * block);

  const RealImage real = ToReal(img);
  result.encoded.blocks.resize(count);
  result.approximation = RealImage(img.width, img.height);
  if (options.collect_trace) result.trace.resize(count);

  ParallelFor(count, options.workers, [&](std::size_t b) {
    const int bx = static_cast<int>(b % bx_count);
    const int by = static_cast<int>(b / bx_count);
    const Matrix f = ExtractBlock(real, bx, by, block);
    TraceSink sink;
    if (options.collect_trace) {
      sink = [&rows = result.trace[b]](const TraceRow& r) {
        rows.push_back(r);
      };
    }
    OmpResult omp;
    try {
      omp = RunOmp(f.flat(), dict, rule, sink);
    } catch (const PursuitExhausted& e) {
      throw PursuitExhausted("block " + std::to_string(b) +
                             " (x=" + std::to_string(bx) +
                             ", y=" + std::to_string(by) + "): " + e.what());
    }
    SparseBlock& out = result.encoded.blocks[b];
    out.entries.reserve(omp.atoms.size());
    for (std::size_t k = 0; k < omp.atoms.size(); ++k) {
      out.entries.push_back(
          {static_cast<std::uint32_t>(omp.atoms[k]), omp.coeffs[k]});
    }
    StoreBlock(ReconstructBlock(out, dict), bx, by, result.approximation);
  });

  SparsityReport& report = result.report;
  report.image = options.image_name;
  report.method = std::string(DictionaryName(dict.id()));
  report.pixels = img.pixels.size();
  report.total_atoms = result.encoded.TotalAtoms();
  report.target_psnr = target_db;
  report.psnr = Psnr(img, result.approximation);
  for (const SparseBlock& b : result.encoded.blocks) {
    ++report.atoms_per_block[b.entries.size()];
  }
  return result;
}

RealImage Decode(const EncodedImage& enc, const Dictionary2D& dict,
                 int workers) {
  const EncodedHeader& h = enc.header;
  if (h.dictionary != dict.id()) {
    throw Error(ErrorKind::kUsage,
                "container was encoded with " +
                    std::string(DictionaryName(h.dictionary)) +
                    " but decoder dictionary is " +
                    std::string(DictionaryName(dict.id())));
  }
  if (h.block_size != static_cast<std::uint32_t>(dict.block_len())) {
    throw Error(ErrorKind::kUsage,
                "container block size " + std::to_string(h.block_size) +
                    " does not match dictionary block length " +
                    std::to_string(dict.block_len()));
  }
  CheckTiling(h.width, h.height, h.block_size);
  if (enc.blocks.size() != h.BlockCount()) {
    throw Error(ErrorKind::kUsage, "container holds " +
                                       std::to_string(enc.blocks.size()) +
                                       " blocks, header implies " +
                                       std::to_string(h.BlockCount()));
  }
  RealImage out(h.width, h.height);
  const std::size_t bx_count = h.BlocksX();
  ParallelFor(enc.blocks.size(), workers, [&](std::size_t b) {
    StoreBlock(ReconstructBlock(enc.blocks[b], dict),
               static_cast<int>(b % bx_count), static_cast<int>(b / bx_count),
               out);
  });
  return out;
}

std::vector<std::uint8_t> SerializeContainer(const EncodedImage& enc) {
  const EncodedHeader& h = enc.header;
  ByteWriter w;
  w.Bytes(kContainerMagic, sizeof(kContainerMagic));
  w.U16(h.version);
  w.U16(static_cast<std::uint16_t>(h.dictionary));
  w.U32(h.width);
  w.U32(h.height);
  w.U32(h.block_size);
  w.F64(h.target_psnr);
  for (const SparseBlock& b : enc.blocks) {
    if (b.entries.size() > 0xffff) {
      throw Error(ErrorKind::kUsage, "block has too many entries to store");
    }
    w.U16(static_cast<std::uint16_t>(b.entries.size()));
    for (const SparseEntry& e : b.entries) {
      w.U32(e.address);
      w.F64(e.coefficient);
    }
  }
  return w.Take();
}

EncodedImage ParseContainer(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  r.Need(sizeof(kContainerMagic), "magic");
  if (std::memcmp(bytes.data(), kContainerMagic, sizeof(kContainerMagic)) !=
      0) {
    throw CorruptContainer(0, "bad magic (expected SIC1)");
  }
  r.Uint(sizeof(kContainerMagic), "magic");

  EncodedImage enc;
  EncodedHeader& h = enc.header;
  std::size_t at = r.pos();
  h.version = static_cast<std::uint16_t>(r.Uint(2, "version"));
  if (h.version != kContainerVersion) {
    throw CorruptContainer(at,
                           "unsupported version " + std::to_string(h.version));
  }
  at = r.pos();
  const auto raw_dict = static_cast<std::uint16_t>(r.Uint(2, "dictionary id"));
  if (!IsKnownDictionaryId(raw_dict)) {
    throw CorruptContainer(at,
                           "unknown dictionary id " + std::to_string(raw_dict));
  }
  h.dictionary = static_cast<DictionaryId>(raw_dict);
  at = r.pos();
  h.width = static_cast<std::uint32_t>(r.Uint(4, "width"));
  h.height = static_cast<std::uint32_t>(r.Uint(4, "height"));
  h.block_size = static_cast<std::uint32_t>(r.Uint(4, "block size"));
  if (h.block_size < static_cast<std::uint32_t>(MaxAtomSupport(h.dictionary)) ||
      h.block_size > kMaxBlockSize || h.width == 0 || h.height == 0 ||
      h.width % h.block_size != 0 || h.height % h.block_size != 0) {
    throw CorruptContainer(at, "inconsistent image/block dimensions");
  }
  at = r.pos();
  h.target_psnr = r.F64("target PSNR");
  if (!(h.target_psnr > 0.0)) {
    throw CorruptContainer(at, "target PSNR must be positive");
  }

  const std::size_t n = BaseAtomCount(h.dictionary, h.block_size);
  const std::size_t address_limit = n * n;
  const std::size_t max_entries =
      static_cast<std::size_t>(h.block_size) * h.block_size;
  enc.blocks.resize(h.BlockCount());
  std::unordered_set<std::uint32_t> seen;
  for (SparseBlock& block : enc.blocks) {
    at = r.pos();
    const std::size_t count = r.Uint(2, "block entry count");
    if (count > max_entries) {
      throw CorruptContainer(at, "block entry count " + std::to_string(count) +
                                     " exceeds block dimension");
    }
    r.Need(count * 12, "block entries");
    block.entries.resize(count);
    seen.clear();
    for (SparseEntry& e : block.entries) {
      at = r.pos();
      e.address = static_cast<std::uint32_t>(r.Uint(4, "atom address"));
      if (e.address >= address_limit) {
        throw CorruptContainer(
            at, "atom address " + std::to_string(e.address) + " out of range");
      }
      if (!seen.insert(e.address).second) {
        throw CorruptContainer(
            at, "duplicate atom address " + std::to_string(e.address));
      }
      e.coefficient = r.F64("coefficient");
    }
  }
  if (r.remaining() != 0) {
    throw CorruptContainer(r.pos(), "trailing bytes after last block");
  }
  return enc;
}

void WriteTraceCsv(std::ostream& os, std::string_view image,
                   const Dictionary2D& dict,
                   const std::vector<std::vector<TraceRow>>& trace) {
  char buf[64];
  for (std::size_t b = 0; b < trace.size(); ++b) {
    for (const TraceRow& row : trace[b]) {
      const auto [i, j] = dict.Address(row.atom);
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g", row.abs_correlation,
                    row.residual_sse);
      os << image << ',' << b << ',' << row.iteration << ',' << i << ',' << j
         << ',' << buf << '\n';
    }
  }
}

}  // namespace sic

#ifndef SIC_CODEC_H_
#define SIC_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sic/dictionary.h"
#include "sic/image.h"
#include "sic/pursuit.h"
#include "sic/report.h"

namespace sic {

struct SparseEntry {
  std::uint32_t address = 0;  // i * |base| + j
  double coefficient = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

struct SparseBlock {
  std::vector<SparseEntry> entries;

  bool operator==(const SparseBlock&) const = default;
};

inline constexpr char kContainerMagic[4] = {'S', 'I', 'C', '1'};
inline constexpr std::uint16_t kContainerVersion = 1;
inline constexpr int kMaxBlockSize = 255;

struct EncodedHeader {
  std::uint16_t version = kContainerVersion;
  DictionaryId dictionary = DictionaryId::kDct2xLinear;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t block_size = 0;
  double target_psnr = 0.0;

  std::size_t BlocksX() const { return width / block_size; }
  std::size_t BlocksY() const { return height / block_size; }
  std::size_t BlockCount() const { return BlocksX() * BlocksY(); }

  bool operator==(const EncodedHeader&) const = default;
};

// Blocks are stored row-major over the block grid.
struct EncodedImage {
  EncodedHeader header;
  std::vector<SparseBlock> blocks;

  std::size_t TotalAtoms() const;

  bool operator==(const EncodedImage&) const = default;
};

struct EncodeOptions {
  int workers = 1;
  std::string image_name;
  bool collect_trace = false;
};

struct EncodeResult {
  EncodedImage encoded;
  SparsityReport report;
  RealImage approximation;
  // Per block, in block order; filled when collect_trace is set.
  std::vector<std::vector<TraceRow>> trace;
};

// Number of 1D atoms in a dictionary of the given family and block length.
std::size_t BaseAtomCount(DictionaryId id, int block_len);

// Approximates every block with OMP to a uniform per-block SSE budget
// derived from target_db, so the decoded image reaches target_db.
// Throws Error(kUsage) if the image does not tile into blocks and
// PursuitExhausted (naming the block) if a block cannot be approximated.
EncodeResult Encode(const ImageGray8& img, const Dictionary2D& dict,
                    double target_db, const EncodeOptions& options = {});

// Superposes the stored atoms block by block. Throws Error(kUsage) when the
// header does not match the dictionary.
RealImage Decode(const EncodedImage& enc, const Dictionary2D& dict,
                 int workers = 1);

// Little-endian .sic container.
std::vector<std::uint8_t> SerializeContainer(const EncodedImage& enc);
// Throws CorruptContainer with the offending byte offset.
EncodedImage ParseContainer(std::span<const std::uint8_t> bytes);

// Approximation of one block from its sparse entries.
Matrix ReconstructBlock(const SparseBlock& block, const Dictionary2D& dict);

inline constexpr std::string_view kTraceHeader =
    "image,block,k,i,j,abs_correlation,residual_sse";

// One CSV line per pursuit iteration, blocks in order (no header).
void WriteTraceCsv(std::ostream& os, std::string_view image,
                   const Dictionary2D& dict,
                   const std::vector<std::vector<TraceRow>>& trace);

}  // namespace sic

#endif  // SIC_CODEC_H_

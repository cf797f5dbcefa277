#include "sic/codec.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <vector>

#include "sic/error.h"

namespace sic {
namespace {

const Dictionary2D& Linear16() {
  static const Dictionary2D d(
      AssembleDictionary(DictionaryId::kDct2xLinear, 16));
  return d;
}

// Smooth gradient plus texture so blocks need varying atom counts.
ImageGray8 Synthetic(int w, int h, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> noise(-6, 6);
  ImageGray8 img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = 128 + 60 * std::sin(x / 7.0) * std::cos(y / 11.0) +
                       (x > w / 2 ? 30 : 0) + noise(rng);
      img.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return img;
}

TEST(CodecTest, BaseAtomCountMatchesAssembly) {
  for (int len : {11, 16, 32}) {
    for (DictionaryId id :
         {DictionaryId::kDct2xLinear, DictionaryId::kDct2xCubic}) {
      EXPECT_EQ(BaseAtomCount(id, len), AssembleDictionary(id, len).size());
    }
  }
}

TEST(CodecTest, ConstantImageUsesOneAtomPerBlock) {
  const ImageGray8 img(64, 32, 128);
  const EncodeResult r = Encode(img, Linear16(), 40.0);
  ASSERT_EQ(r.encoded.blocks.size(), 8u);
  for (const SparseBlock& b : r.encoded.blocks) {
    ASSERT_EQ(b.entries.size(), 1u);
    EXPECT_EQ(b.entries[0].address, 0u);
    EXPECT_NEAR(b.entries[0].coefficient, 2048.0, 1e-9);
  }
  EXPECT_EQ(r.report.total_atoms, 8u);
  EXPECT_DOUBLE_EQ(r.report.CompressionRatio(), 256.0);
  EXPECT_GT(r.report.psnr, 100.0);
  EXPECT_EQ(r.report.atoms_per_block.at(1), 8u);
}

TEST(CodecTest, ImpulseIsRepresentedExactly) {
  ImageGray8 img(16, 16, 0);
  img.at(5, 9) = 255;
  const EncodeResult r = Encode(img, Linear16(), 200.0);
  for (std::size_t p = 0; p < img.pixels.size(); ++p) {
    EXPECT_NEAR(r.approximation.pixels[p], img.pixels[p], 1e-6);
  }
}

TEST(CodecTest, ReachesTargetAndDecodesIdentically) {
  const ImageGray8 img = Synthetic(64, 48, 1);
  for (double target : {30.0, 40.0, 45.0}) {
    const EncodeResult r = Encode(img, Linear16(), target);
    EXPECT_GE(r.report.psnr, target);
    EXPECT_EQ(r.report.target_psnr, target);
    const RealImage dec = Decode(r.encoded, Linear16());
    EXPECT_EQ(dec.pixels, r.approximation.pixels);
    EXPECT_DOUBLE_EQ(r.report.CompressionRatio() * r.report.total_atoms,
                     static_cast<double>(img.pixels.size()));
  }
}

TEST(CodecTest, WorkerCountDoesNotChangeOutput) {
  const ImageGray8 img = Synthetic(64, 64, 2);
  EncodeOptions one, four;
  one.workers = 1;
  four.workers = 4;
  const EncodeResult a = Encode(img, Linear16(), 40.0, one);
  const EncodeResult b = Encode(img, Linear16(), 40.0, four);
  EXPECT_EQ(SerializeContainer(a.encoded), SerializeContainer(b.encoded));
}

TEST(CodecTest, TraceFollowsResidual) {
  const ImageGray8 img = Synthetic(32, 16, 3);
  EncodeOptions opts;
  opts.collect_trace = true;
  const EncodeResult r = Encode(img, Linear16(), 40.0, opts);
  ASSERT_EQ(r.trace.size(), 2u);
  for (std::size_t b = 0; b < 2; ++b) {
    ASSERT_EQ(r.trace[b].size(), r.encoded.blocks[b].entries.size());
    for (std::size_t k = 1; k < r.trace[b].size(); ++k) {
      EXPECT_LE(r.trace[b][k].residual_sse,
                r.trace[b][k - 1].residual_sse * (1 + 1e-12));
    }
    if (!r.trace[b].empty()) {
      EXPECT_LE(r.trace[b].back().residual_sse, PsnrToBlockSse(40.0, 16));
    }
  }
}

TEST(CodecTest, RejectsUntiledImage) {
  EXPECT_THROW(Encode(ImageGray8(20, 16), Linear16(), 40.0), Error);
}

EncodedImage SmallContainer() {
  EncodedImage enc;
  enc.header.dictionary = DictionaryId::kDct2xLinear;
  enc.header.width = 32;
  enc.header.height = 16;
  enc.header.block_size = 16;
  enc.header.target_psnr = 40.0;
  enc.blocks.resize(2);
  enc.blocks[0].entries = {{0, 2048.0}, {87, -1.5}};
  return enc;
}

TEST(ContainerTest, ExactByteLayout) {
  const std::vector<std::uint8_t> bytes = SerializeContainer(SmallContainer());
  const std::uint8_t header[] = {'S', 'I', 'C', '1', 1, 0, 1,  0, 32, 0,
                                 0,   0,   16,  0,   0, 0, 16, 0, 0,  0};
  ASSERT_EQ(bytes.size(), 20u + 8 + 2 + 2 * 12 + 2);
  EXPECT_EQ(std::memcmp(bytes.data(), header, sizeof(header)), 0);
  double target;
  std::memcpy(&target, &bytes[20], 8);
  EXPECT_EQ(target, 40.0);
  EXPECT_EQ(bytes[28], 2);
  EXPECT_EQ(bytes[29], 0);
  EXPECT_EQ(bytes[42], 87);
  EXPECT_EQ(bytes[54], 0);
  EXPECT_EQ(bytes[55], 0);
}

TEST(ContainerTest, RoundTrip) {
  const EncodedImage enc = SmallContainer();
  EXPECT_EQ(ParseContainer(SerializeContainer(enc)), enc);

  const ImageGray8 img = Synthetic(48, 32, 4);
  const EncodeResult r = Encode(img, Linear16(), 40.0);
  const std::vector<std::uint8_t> bytes = SerializeContainer(r.encoded);
  const EncodedImage back = ParseContainer(bytes);
  EXPECT_EQ(back, r.encoded);
  EXPECT_EQ(SerializeContainer(back), bytes);
}

std::size_t CorruptOffset(const std::vector<std::uint8_t>& bytes) {
  try {
    ParseContainer(bytes);
  } catch (const CorruptContainer& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos);
    return e.offset();
  }
  ADD_FAILURE() << "container accepted";
  return 0;
}

TEST(ContainerTest, CorruptionsReportOffsets) {
  const std::vector<std::uint8_t> good = SerializeContainer(SmallContainer());

  std::vector<std::uint8_t> b = good;
  b[0] = 'X';
  EXPECT_EQ(CorruptOffset(b), 0u);

  b = good;
  b[4] = 2;
  EXPECT_EQ(CorruptOffset(b), 4u);

  b = good;
  b[6] = 9;
  EXPECT_EQ(CorruptOffset(b), 6u);

  b = good;
  b[16] = 7;  // 32 is not a multiple of 7
  EXPECT_EQ(CorruptOffset(b), 8u);

  b = good;
  std::memset(&b[20], 0, 8);
  EXPECT_EQ(CorruptOffset(b), 20u);

  b = good;
  b[28] = 0xff;
  b[29] = 0xff;
  EXPECT_EQ(CorruptOffset(b), 28u);

  b = good;
  b[42] = 0;  // duplicates the first address
  EXPECT_EQ(CorruptOffset(b), 42u);

  b = good;
  b[33] = 0xff;  // address far beyond 86 * 86
  EXPECT_EQ(CorruptOffset(b), 30u);

  b = good;
  b.resize(b.size() - 1);
  EXPECT_EQ(CorruptOffset(b), 54u);

  b = good;
  b.resize(40);
  EXPECT_EQ(CorruptOffset(b), 30u);

  b = good;
  b.push_back(0);
  EXPECT_EQ(CorruptOffset(b), good.size());
}

TEST(DecodeTest, EmptyBlockDecodesToZero) {
  const RealImage img = Decode(SmallContainer(), Linear16());
  for (int y = 0; y < 16; ++y) {
    for (int x = 16; x < 32; ++x) EXPECT_EQ(img.at(x, y), 0.0);
  }
  const double expected =
      2048.0 / 16.0 - 1.5 * Linear16().AtomBlock(1, 1)(0, 0);
  EXPECT_NEAR(img.at(0, 0), expected, 1e-12);
}

TEST(DecodeTest, RejectsMismatchedDictionary) {
  const Dictionary2D cubic(AssembleDictionary(DictionaryId::kDct2xCubic, 16));
  EXPECT_THROW(Decode(SmallContainer(), cubic), Error);
  const Dictionary2D short_block(
      AssembleDictionary(DictionaryId::kDct2xLinear, 8));
  EXPECT_THROW(Decode(SmallContainer(), short_block), Error);
}

TEST(TraceCsvTest, Format) {
  std::vector<std::vector<TraceRow>> trace(2);
  trace[1].push_back({1, Linear16().FlatIndex(3, 4), 12.5, 100.25});
  std::ostringstream os;
  WriteTraceCsv(os, "img", Linear16(), trace);
  EXPECT_EQ(os.str(), "img,1,1,3,4,12.5,100.25\n");
}

}  // namespace
}  // namespace sic

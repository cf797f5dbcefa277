#include "sic/image.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sic/error.h"

namespace sic {
namespace {

std::vector<std::uint8_t> Bytes(const std::string& s) {
  return {s.begin(), s.end()};
}

TEST(PgmTest, ParsesHeaderWithComments) {
  std::vector<std::uint8_t> data =
      Bytes("P5\n# made by hand\n3 2\n# another\n255\n");
  for (int i = 0; i < 6; ++i) data.push_back(static_cast<std::uint8_t>(i * 40));
  const ImageGray8 img = ParsePgm(data);
  EXPECT_EQ(img.width, 3);
  EXPECT_EQ(img.height, 2);
  EXPECT_EQ(img.at(2, 1), 200);
  EXPECT_EQ(img.at(0, 1), 120);
}

TEST(PgmTest, RoundTrip) {
  ImageGray8 img(5, 4);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    img.pixels[i] = static_cast<std::uint8_t>(i * 13);
  }
  const std::vector<std::uint8_t> enc = EncodePgm(img);
  EXPECT_EQ(std::string(enc.begin(), enc.begin() + 11), "P5\n5 4\n255\n");
  const ImageGray8 back = ParsePgm(enc);
  EXPECT_EQ(back.width, 5);
  EXPECT_EQ(back.height, 4);
  EXPECT_EQ(back.pixels, img.pixels);
}

TEST(PgmTest, RejectsMalformedInput) {
  EXPECT_THROW(ParsePgm(Bytes("P2\n1 1\n255\n0")), Error);
  EXPECT_THROW(ParsePgm(Bytes("P5\n2 2\n65535\n")), Error);
  EXPECT_THROW(ParsePgm(Bytes("P5\n2 2\n255\nabc")), Error);
  EXPECT_THROW(ParsePgm(Bytes("P5\n2")), Error);
  EXPECT_THROW(ParsePgm(Bytes("")), Error);
  try {
    ParsePgm(Bytes("P5\n2 2\n255\nab"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(PgmTest, MissingFileNamesPath) {
  try {
    ReadPgm("/nonexistent/dir/x.pgm");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.pgm"),
              std::string::npos);
  }
}

TEST(ImageTest, ClampRoundsAndSaturates) {
  RealImage r(4, 1);
  r.pixels = {-3.2, 12.5, 254.6, 300.0};
  const ImageGray8 g = ClampToGray8(r);
  EXPECT_EQ(g.pixels, (std::vector<std::uint8_t>{0, 13, 255, 255}));
}

TEST(ImageTest, BlocksRoundTrip) {
  RealImage r(8, 4);
  for (std::size_t i = 0; i < r.pixels.size(); ++i) r.pixels[i] = i;
  const Matrix b = ExtractBlock(r, 1, 0, 4);
  EXPECT_EQ(b(0, 0), 4.0);
  EXPECT_EQ(b(3, 3), 31.0);
  RealImage out(8, 4);
  StoreBlock(ExtractBlock(r, 0, 0, 4), 0, 0, out);
  StoreBlock(b, 1, 0, out);
  EXPECT_EQ(out.pixels, r.pixels);
}

TEST(PsnrTest, KnownValues) {
  const ImageGray8 a(4, 4, 100);
  EXPECT_EQ(Psnr(a, ToReal(a)), std::numeric_limits<double>::infinity());
  RealImage off = ToReal(a);
  for (double& v : off.pixels) v += 1.0;
  EXPECT_NEAR(Psnr(a, off), 20.0 * std::log10(255.0), 1e-12);
  EXPECT_NEAR(Psnr(a, off), 48.130803608679103, 1e-12);
  for (double& v : off.pixels) v += 254.0;
  EXPECT_NEAR(Psnr(a, off), 0.0, 1e-12);
  EXPECT_THROW(MeanSquaredError(a, RealImage(4, 3)), Error);
}

TEST(PsnrTest, BlockBudget) {
  EXPECT_NEAR(PsnrToBlockSse(40.0, 16), 1664.64, 1e-9);
  EXPECT_NEAR(PsnrToBlockSse(0.0, 1), 65025.0, 1e-9);
  EXPECT_GT(PsnrToBlockSse(30.0, 16), PsnrToBlockSse(40.0, 16));
}

}  // namespace
}  // namespace sic

#include "qir/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "qir/image_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures{QIR_FIXTURE_DIR};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result qir_run(std::vector<std::string> args, const std::string& stdin_data = "") {
  args.insert(args.begin(), "qir");
  std::istringstream in(stdin_data);
  std::ostringstream out, err;
  const int code = qir::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void spit(const fs::path& p, const std::string& data) {
  std::ofstream(p, std::ios::binary) << data;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qir_cli_" + std::string(::testing::UnitTest::GetInstance()
                                         ->current_test_info()
                                         ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }
  static std::string fixture(const std::string& name) {
    return (kFixtures / name).string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EncodeWritesContainerAndKey) {
  const auto r = qir_run({"encode", "--input", fixture("gray4x4.pgm"), "--out",
                          tmp("a.qir"), "--key", tmp("a.qirk")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(tmp("a.qir")).substr(0, 4), "QIR1");
  EXPECT_EQ(slurp(tmp("a.qirk")).substr(0, 4), "QIRK");
  EXPECT_NE(r.out.find("location_bits_per_pixel=4\n"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  auto r = qir_run({"encode", "--input", fixture("gray4x4.pgm"), "--out", tmp("a.qir")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error: Usage: ", 0), 0u) << r.err;
  EXPECT_EQ(qir_run({}).code, 2);
  EXPECT_EQ(qir_run({"frobnicate"}).code, 2);
  EXPECT_EQ(qir_run({"encode", "--input", "x", "--out", "y", "--mode", "lossy"}).code, 2);
  EXPECT_EQ(qir_run({"--help"}).code, 0);
}

TEST_F(Cli, PlainModeNeedsNoKey) {
  const auto r = qir_run({"encode", "--input", fixture("gray4x4.pgm"), "--out",
                          tmp("a.qir"), "--mode", "plain"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, DataErrors) {
  auto r = qir_run({"encode", "--input", fixture("zero4x4.pgm"), "--out", tmp("a.qir"),
                    "--key", tmp("a.qirk")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error: AllZeroImage: "), std::string::npos) << r.err;

  r = qir_run({"inspect", "--input", tmp("missing.qir")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error: Io: "), std::string::npos) << r.err;

  spit(tmp("bad.pgm"), "P2 2 2 255 1 2");
  r = qir_run({"encode", "--input", tmp("bad.pgm"), "--out", tmp("a.qir"), "--key",
               tmp("a.qirk")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("TruncatedPayload"), std::string::npos);
}

TEST_F(Cli, RoundTripIsByteIdentical) {
  struct Case {
    std::string name;
    bool ascii;
  };
  for (const Case& c : {Case{"gray4x4.pgm", false}, Case{"gray4x4_ascii.pgm", true},
                        Case{"gray3x5_ascii.pgm", true}, Case{"color3x5.ppm", false},
                        Case{"color4x4_ascii.ppm", true}, Case{"gray16_8x8.pgm", false},
                        Case{"uniform4x4.pgm", true}, Case{"scaled2x2.pgm", true}}) {
    SCOPED_TRACE(c.name);
    auto r = qir_run({"encode", "--input", fixture(c.name), "--out", tmp("x.qir"),
                      "--key", tmp("x.qirk")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::string> dec = {"decode", "--input", tmp("x.qir"), "--key",
                                    tmp("x.qirk"), "--out", tmp("x.pnm")};
    if (c.ascii) dec.push_back("--ascii");
    r = qir_run(dec);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(tmp("x.pnm")), slurp(fixture(c.name)));
  }
}

TEST_F(Cli, DecodeWithoutKeyWarnsAndReducesScale) {
  ASSERT_EQ(qir_run({"encode", "--input", fixture("scaled2x2.pgm"), "--out",
                     tmp("s.qir"), "--key", tmp("s.qirk")})
                .code,
            0);
  const auto r = qir_run({"decode", "--input", tmp("s.qir"), "--out", tmp("s.pgm"),
                          "--ascii"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.err.rfind("warning: ", 0), 0u) << r.err;
  EXPECT_EQ(slurp(tmp("s.pgm")), "P2\n2 2\n255\n1 2\n3 4\n");
}

TEST_F(Cli, WrongKeyIsRejected) {
  ASSERT_EQ(qir_run({"encode", "--input", fixture("gray4x4.pgm"), "--out",
                     tmp("a.qir"), "--key", tmp("a.qirk")})
                .code,
            0);
  ASSERT_EQ(qir_run({"encode", "--input", fixture("uniform4x4.pgm"), "--out",
                     tmp("b.qir"), "--key", tmp("b.qirk")})
                .code,
            0);
  const auto r = qir_run({"decode", "--input", tmp("a.qir"), "--key", tmp("b.qirk"),
                          "--out", tmp("a.pgm")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error: KeyMismatch: "), std::string::npos) << r.err;

  ASSERT_EQ(qir_run({"encode", "--input", fixture("color3x5.ppm"), "--out",
                     tmp("c.qir"), "--key", tmp("c.qirk")})
                .code,
            0);
  EXPECT_EQ(qir_run({"decode", "--input", tmp("a.qir"), "--key", tmp("c.qirk"),
                     "--out", tmp("a.pgm")})
                .code,
            1);
}

TEST_F(Cli, Inspect) {
  ASSERT_EQ(qir_run({"encode", "--input", fixture("uniform4x4.pgm"), "--out",
                     tmp("u.qir"), "--key", tmp("u.qirk")})
                .code,
            0);
  auto r = qir_run({"inspect", "--input", tmp("u.qir")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("location_bits_per_pixel=4\n"), std::string::npos);
  EXPECT_NE(r.out.find("distinct_amplitudes=1\n"), std::string::npos);
  EXPECT_NE(r.out.find("m=2\n"), std::string::npos);
  EXPECT_NE(r.out.find("n=2\n"), std::string::npos);

  std::string bytes = slurp(tmp("u.qir"));
  bytes[bytes.size() / 2] ^= 0x04;
  spit(tmp("corrupt.qir"), bytes);
  r = qir_run({"inspect", "--input", tmp("corrupt.qir")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error: BadChecksum: "), std::string::npos) << r.err;
}

TEST_F(Cli, Verify) {
  auto r = qir_run({"verify", "--input", fixture("gray4x4.pgm")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("oracle: PASS"), std::string::npos);

  r = qir_run({"verify", "--input", fixture("color3x5.ppm"), "--space", "yuv"});
  EXPECT_EQ(r.code, 0) << r.err;

  r = qir_run({"verify", "--input", fixture("gray4x4.pgm"), "--inject-fault"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("oracle: FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("first_failure="), std::string::npos);

  std::string big = "P2 65 1 255";
  for (int i = 0; i < 65; ++i) big += " 1";
  spit(tmp("big.pgm"), big);
  r = qir_run({"verify", "--input", tmp("big.pgm")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error: OracleTooLarge: "), std::string::npos) << r.err;
}

TEST_F(Cli, StdinInput) {
  const auto r = qir_run({"encode", "--input", "-", "--out", tmp("s.qir"), "--key",
                          tmp("s.qirk")},
                         "P2 2 2 255 1 2 3 4");
  EXPECT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(qir_run({"decode", "--input", "-", "--key", tmp("s.qirk"), "--out",
                     tmp("s.pgm"), "--ascii"},
                    slurp(tmp("s.qir")))
                .code,
            0);
  EXPECT_EQ(slurp(tmp("s.pgm")), "P2\n2 2\n255\n1 2\n3 4\n");
}

TEST_F(Cli, YuvRoundTripWithinOne) {
  ASSERT_EQ(qir_run({"encode", "--input", fixture("color3x5.ppm"), "--space", "yuv",
                     "--out", tmp("y.qir"), "--key", tmp("y.qirk")})
                .code,
            0);
  ASSERT_EQ(qir_run({"decode", "--input", tmp("y.qir"), "--key", tmp("y.qirk"),
                     "--out", tmp("y.ppm")})
                .code,
            0);
  const std::string a = slurp(fixture("color3x5.ppm"));
  const std::string b = slurp(tmp("y.ppm"));
  const auto ia = qir::read_image({reinterpret_cast<const std::uint8_t*>(a.data()), a.size()});
  const auto ib = qir::read_image({reinterpret_cast<const std::uint8_t*>(b.data()), b.size()});
  ASSERT_EQ(ia.samples().size(), ib.samples().size());
  for (std::size_t i = 0; i < ia.samples().size(); ++i) {
    EXPECT_LE(std::abs(int(ia.samples()[i]) - int(ib.samples()[i])), 1);
  }
}

#include "qir/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include "qir/dense_oracle.hpp"
#include "qir/error.hpp"
#include "qir/image_io.hpp"
#include "qir/qir_format.hpp"
#include "qir/quantum_image.hpp"

namespace qir::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SpaceChoice { Auto, Gray, Rgb, Yuv };

struct Options {
  std::string input;
  std::string output;
  std::string key;
  SpaceChoice space = SpaceChoice::Auto;
  EncodingMode mode = EncodingMode::Keyed;
  bool ascii = false;
  bool inject_fault = false;
};

std::vector<std::uint8_t> read_all(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::Io, "cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(file),
                                  std::istreambuf_iterator<char>()};
  if (file.bad()) throw Error(Errc::Io, "failed reading '" + path + "'");
  return bytes;
}

void write_all(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::Io, "cannot open '" + path + "' for writing");
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) throw Error(Errc::Io, "failed writing '" + path + "'");
}

ColorSpace resolve_space(SpaceChoice choice, const RasterImage& image) {
  switch (choice) {
    case SpaceChoice::Gray: return ColorSpace::Gray;
    case SpaceChoice::Rgb: return ColorSpace::Rgb;
    case SpaceChoice::Yuv: return ColorSpace::Yuv;
    case SpaceChoice::Auto: break;
  }
  return image.channels() == 1 ? ColorSpace::Gray : ColorSpace::Rgb;
}

int encode_cmd(const Options& opt, std::istream& in, std::ostream& out) {
  if (opt.mode == EncodingMode::Keyed && opt.key.empty()) {
    throw UsageError("--key is required in keyed mode");
  }
  const RasterImage raster = read_image(read_all(opt.input, in));
  const ColorSpace space = resolve_space(opt.space, raster);

  QirContainer container;
  container.bit_depth = raster.bit_depth();
  container.color_space = space;
  QirKey key;
  for (const auto& channel : to_channels(raster, space)) {
    auto [padded, record] = pad_to_pow2(channel);
    const QuantumImage image = encode(padded, opt.mode);
    container.padding = record;
    container.channels.push_back(build_index(image));
    key.channels.push_back(*image.key());
  }
  write_all(opt.output, write_container(container));
  if (!opt.key.empty()) write_all(opt.key, write_key(key));
  out << format_stats(stats(container));
  return kSuccess;
}

int decode_cmd(const Options& opt, std::istream& in, std::ostream& err) {
  const QirContainer container = read_container(read_all(opt.input, in));
  std::optional<QirKey> key;
  if (!opt.key.empty()) {
    key = read_key(read_all(opt.key, in));
    if (key->channels.size() != container.channels.size()) {
      throw Error(Errc::KeyMismatch,
                  "key holds " + std::to_string(key->channels.size()) +
                      " channels, container holds " +
                      std::to_string(container.channels.size()));
    }
  } else {
    err << "warning: no key supplied; image is recovered only up to a "
           "positive scale\n";
  }
  if (container.bit_depth > 16) {
    throw Error(Errc::UnsupportedMaxval,
                "bit depth " + std::to_string(container.bit_depth) +
                    " cannot be written as PNM");
  }

  std::vector<AmplitudeMatrix> channels;
  for (std::size_t i = 0; i < container.channels.size(); ++i) {
    const QuantumImage image =
        from_index(container.channels[i], container.bit_depth);
    AmplitudeMatrix padded =
        key ? decode(image, key->channels[i]) : decode_unkeyed(image);
    channels.push_back(crop(padded, container.padding));
  }
  const auto maxval = static_cast<std::uint32_t>((1u << container.bit_depth) - 1);
  const RasterImage raster =
      from_channels(channels, container.color_space, maxval);
  write_all(opt.output, write_image(raster, !opt.ascii));
  return kSuccess;
}

int inspect_cmd(const Options& opt, std::istream& in, std::ostream& out) {
  out << format_stats(stats(read_container(read_all(opt.input, in))));
  return kSuccess;
}

int verify_cmd(const Options& opt, std::istream& in, std::ostream& out) {
  const RasterImage raster = read_image(read_all(opt.input, in));
  const ColorSpace space = resolve_space(opt.space, raster);
  bool pass = true;
  std::size_t index = 0;
  std::ostringstream detail;
  for (const auto& channel : to_channels(raster, space)) {
    auto [padded, record] = pad_to_pow2(channel);
    const auto report =
        oracle::verify_channel(padded, opt.mode, opt.inject_fault && index == 0);
    detail << "channel" << index << ".reconstruction_max_deviation="
           << report.reconstruction.max_deviation << "\n"
           << "channel" << index << ".normalized_max_deviation="
           << report.normalized.max_deviation << "\n";
    if (!report.reconstruction.pass) {
      detail << "channel" << index << ".first_failure=("
             << report.reconstruction.worst_row + 1 << ","
             << report.reconstruction.worst_col + 1 << ")\n";
    }
    pass = pass && report.pass();
    ++index;
  }
  out << detail.str() << "oracle: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kSuccess : kDataError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum image representation codec"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, SpaceChoice> spaces{
      {"auto", SpaceChoice::Auto},
      {"gray", SpaceChoice::Gray},
      {"rgb", SpaceChoice::Rgb},
      {"yuv", SpaceChoice::Yuv}};
  const std::map<std::string, EncodingMode> modes{
      {"plain", EncodingMode::Plain}, {"keyed", EncodingMode::Keyed}};

  auto* enc = app.add_subcommand("encode", "Encode a PNM image into a QIR container");
  enc->add_option("--input", opt.input, "Input PGM/PPM, or - for stdin")->required();
  enc->add_option("--out", opt.output, "Output container")->required();
  enc->add_option("--key", opt.key, "Output key file");
  enc->add_option("--space", opt.space, "gray | rgb | yuv (default: by channel count)")
      ->transform(CLI::CheckedTransformer(spaces, CLI::ignore_case));
  enc->add_option("--mode", opt.mode, "plain | keyed (default keyed)")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));

  auto* dec = app.add_subcommand("decode", "Decode a QIR container to PNM");
  dec->add_option("--input", opt.input, "Input container, or - for stdin")->required();
  dec->add_option("--key", opt.key, "Key file");
  dec->add_option("--out", opt.output, "Output PNM")->required();
  dec->add_flag("--ascii", opt.ascii, "Write P2/P3 instead of P5/P6");

  auto* ins = app.add_subcommand("inspect", "Print container statistics");
  ins->add_option("--input", opt.input, "Input container, or - for stdin")->required();

  auto* ver = app.add_subcommand("verify", "Check the codec against the dense oracle");
  ver->add_option("--input", opt.input, "Input PGM/PPM, or - for stdin")->required();
  ver->add_option("--space", opt.space, "gray | rgb | yuv")
      ->transform(CLI::CheckedTransformer(spaces, CLI::ignore_case));
  ver->add_option("--mode", opt.mode, "plain | keyed")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  ver->add_flag("--inject-fault", opt.inject_fault)->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "error: Usage: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*enc) return encode_cmd(opt, in, out);
    if (*dec) return decode_cmd(opt, in, err);
    if (*ins) return inspect_cmd(opt, in, out);
    return verify_cmd(opt, in, out);
  } catch (const UsageError& e) {
    err << "error: Usage: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: Internal: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace qir::cli

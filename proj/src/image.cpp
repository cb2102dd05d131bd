#include "gpee/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gpee/errors.hpp"

namespace gpee {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::IoFailure: return "IoFailure";
    case Errc::MalformedPgm: return "MalformedPgm";
    case Errc::MaxvalUnsupported: return "MaxvalUnsupported";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BitstreamOverrun: return "BitstreamOverrun";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::CapacityUnreachable: return "CapacityUnreachable";
    case Errc::ImageTooSmall: return "ImageTooSmall";
    case Errc::ThresholdDeltaOverflow: return "ThresholdDeltaOverflow";
    case Errc::MalformedStego: return "MalformedStego";
    case Errc::SolveFailed: return "SolveFailed";
  }
  return "Unknown";
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, fill) {
  if (width < 0 || height < 0) throw Error(Errc::InvalidArgument, "negative image dimension");
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0) throw Error(Errc::InvalidArgument, "negative image dimension");
  if (pixels_.size() != static_cast<std::size_t>(width) * height)
    throw Error(Errc::InvalidArgument, "pixel buffer size does not match dimensions");
}

namespace {

// Reads the next header token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF) throw Error(Errc::MalformedPgm, "unexpected end of header");
  std::string tok;
  while (c != EOF && !std::isspace(c) && c != '#') {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c == '#') in.putback('#');
  return tok;
}

int parse_int(const std::string& tok, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::MalformedPgm, std::string("invalid ") + what + " field: '" + tok + "'");
  }
}

}  // namespace

GrayImage load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open '" + path + "'");

  std::string magic = next_token(in);
  if (magic != "P5" && magic != "P2") throw Error(Errc::MalformedPgm, "not a PGM file (magic '" + magic + "')");

  int width = parse_int(next_token(in), "width");
  int height = parse_int(next_token(in), "height");
  int maxval = parse_int(next_token(in), "maxval");
  if (width <= 0 || height <= 0) throw Error(Errc::MalformedPgm, "non-positive dimensions");
  if (maxval != 255) throw Error(Errc::MaxvalUnsupported, "maxval must be 255, got " + std::to_string(maxval));

  std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<std::uint8_t> pixels(count);

  if (magic == "P5") {
    // next_token already consumed the single whitespace byte after maxval.
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count)
      throw Error(Errc::MalformedPgm, "truncated raster data");
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      int v = parse_int(next_token(in), "sample");
      if (v < 0 || v > 255) throw Error(Errc::MalformedPgm, "sample out of range");
      pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  return GrayImage(width, height, std::move(pixels));
}

void save_pgm(const GrayImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoFailure, "cannot open '" + path + "' for writing");
  out << "P5\n" << image.width() << " " << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels().data()),
            static_cast<std::streamsize>(image.pixels().size()));
  if (!out) throw Error(Errc::IoFailure, "write failed for '" + path + "'");
}

std::uint64_t sum_squared_diff_serial(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw Error(Errc::DimensionMismatch, "psnr/mse on images of different size");
  std::uint64_t acc = 0;
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(pa[i]) - static_cast<std::int64_t>(pb[i]);
    acc += static_cast<std::uint64_t>(d * d);
  }
  return acc;
}

std::uint64_t sum_squared_diff(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw Error(Errc::DimensionMismatch, "psnr/mse on images of different size");
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  const std::int64_t n = static_cast<std::int64_t>(pa.size());
  std::uint64_t acc = 0;
#pragma omp parallel for schedule(static) reduction(+ : acc)
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t d = static_cast<std::int64_t>(pa[i]) - static_cast<std::int64_t>(pb[i]);
    acc += static_cast<std::uint64_t>(d * d);
  }
  return acc;
}

double psnr(const GrayImage& a, const GrayImage& b) {
  std::uint64_t ssd = sum_squared_diff(a, b);
  if (ssd == 0) return std::numeric_limits<double>::infinity();
  double mse = static_cast<double>(ssd) / (static_cast<double>(a.width()) * a.height());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace gpee

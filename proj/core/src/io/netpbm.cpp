#include "dttd/io/netpbm.hpp"

#include <fstream>
#include <string>

#include "dttd/common/error.hpp"

namespace dttd::io {

namespace {

void write_binary(const std::filesystem::path& path, const std::string& magic, int w, int h, int maxval,
                  const void* data, size_t bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  f << magic << "\n" << w << " " << h << "\n" << maxval << "\n";
  f.write(static_cast<const char*>(data), static_cast<std::streamsize>(bytes));
  if (!f) throw IoError("short write: " + path.string());
}

int next_token(std::istream& in, const std::filesystem::path& path) {
  // Skips whitespace and '#' comments, then reads one decimal value.
  int c = in.peek();
  while (c == '#' || std::isspace(c)) {
    if (c == '#') {
      std::string line;
      std::getline(in, line);
    } else {
      in.get();
    }
    c = in.peek();
  }
  int value = 0;
  if (!(in >> value)) throw IoError("malformed header: " + path.string());
  return value;
}

struct Header {
  std::string magic;
  int width, height, maxval;
};

Header read_header(std::istream& in, const std::filesystem::path& path, const char* expect_magic) {
  Header h;
  in >> h.magic;
  if (h.magic != expect_magic) {
    throw IoError("expected " + std::string(expect_magic) + " magic in " + path.string() + ", got '" +
                  h.magic + "'");
  }
  h.width = next_token(in, path);
  h.height = next_token(in, path);
  h.maxval = next_token(in, path);
  in.get();  // single whitespace before raster
  if (h.width <= 0 || h.height <= 0) throw IoError("non-positive image extents in " + path.string());
  return h;
}

}  // namespace

void write_ppm(const std::filesystem::path& path, const Image8& img) {
  if (img.channels != 3 || img.pixels.size() != static_cast<size_t>(img.width) * img.height * 3) {
    throw ValidationError("write_ppm: image is not packed H*W*3");
  }
  write_binary(path, "P6", img.width, img.height, 255, img.pixels.data(), img.pixels.size());
}

Image8 read_ppm(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path.string());
  const Header h = read_header(f, path, "P6");
  if (h.maxval != 255) throw IoError("unsupported PPM maxval in " + path.string());
  Image8 img{h.width, h.height, 3, {}};
  img.pixels.resize(static_cast<size_t>(h.width) * h.height * 3);
  f.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (f.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw IoError("truncated PPM raster: " + path.string());
  }
  return img;
}

void write_pgm8(const std::filesystem::path& path, const Image8& img) {
  if (img.channels != 1 || img.pixels.size() != static_cast<size_t>(img.width) * img.height) {
    throw ValidationError("write_pgm8: image is not packed H*W");
  }
  write_binary(path, "P5", img.width, img.height, 255, img.pixels.data(), img.pixels.size());
}

Image8 read_pgm8(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path.string());
  const Header h = read_header(f, path, "P5");
  if (h.maxval != 255) throw IoError("expected 8-bit PGM in " + path.string());
  Image8 img{h.width, h.height, 1, {}};
  img.pixels.resize(static_cast<size_t>(h.width) * h.height);
  f.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (f.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw IoError("truncated PGM raster: " + path.string());
  }
  return img;
}

void write_pgm16(const std::filesystem::path& path, const Image16& img) {
  if (img.pixels.size() != static_cast<size_t>(img.width) * img.height) {
    throw ValidationError("write_pgm16: image is not packed H*W");
  }
  std::vector<uint8_t> be(img.pixels.size() * 2);
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    be[2 * i] = static_cast<uint8_t>(img.pixels[i] >> 8);
    be[2 * i + 1] = static_cast<uint8_t>(img.pixels[i] & 0xff);
  }
  write_binary(path, "P5", img.width, img.height, 65535, be.data(), be.size());
}

Image16 read_pgm16(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open: " + path.string());
  const Header h = read_header(f, path, "P5");
  if (h.maxval != 65535) throw IoError("expected 16-bit PGM in " + path.string());
  Image16 img{h.width, h.height, {}};
  const size_t n = static_cast<size_t>(h.width) * h.height;
  std::vector<uint8_t> be(n * 2);
  f.read(reinterpret_cast<char*>(be.data()), static_cast<std::streamsize>(be.size()));
  if (f.gcount() != static_cast<std::streamsize>(be.size())) {
    throw IoError("truncated PGM raster: " + path.string());
  }
  img.pixels.resize(n);
  for (size_t i = 0; i < n; ++i) {
    img.pixels[i] = static_cast<uint16_t>((be[2 * i] << 8) | be[2 * i + 1]);
  }
  return img;
}

}  // namespace dttd::io

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace dttd::io {

// Binary Netpbm readers/writers. Headers are emitted in one canonical form
// ("P6\n<w> <h>\n<maxval>\n") so identical data gives identical bytes; the
// readers accept any standards-conforming whitespace and '#' comments.

struct Image8 {
  int width = 0, height = 0;
  int channels = 1;  // 1 = PGM, 3 = PPM
  std::vector<uint8_t> pixels;
};

struct Image16 {
  int width = 0, height = 0;
  std::vector<uint16_t> pixels;
};

void write_ppm(const std::filesystem::path& path, const Image8& img);
Image8 read_ppm(const std::filesystem::path& path);

void write_pgm8(const std::filesystem::path& path, const Image8& img);
Image8 read_pgm8(const std::filesystem::path& path);

// 16-bit PGM, big-endian sample order per the Netpbm spec.
void write_pgm16(const std::filesystem::path& path, const Image16& img);
Image16 read_pgm16(const std::filesystem::path& path);

}  // namespace dttd::io

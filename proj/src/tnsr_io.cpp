#include "taf/tnsr_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <memory>

namespace taf {

namespace {

static_assert(std::endian::native == std::endian::little,
              "TNSR payload writes assume a little-endian host");

constexpr char kMagic[4] = {'T', 'A', 'F', 'T'};

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void put_u32(std::FILE* f, uint32_t v) {
  unsigned char b[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
  std::fwrite(b, 1, 4, f);
}

uint32_t get_u32(std::FILE* f, const std::string& path) {
  unsigned char b[4];
  if (std::fread(b, 1, 4, f) != 4) throw DataError("truncated header in " + path);
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
}

template <typename T>
void write_impl(const std::string& path, const Tensor<T>& t, TnsrDtype dtype) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw DataError("cannot open for writing: " + path);
  std::fwrite(kMagic, 1, 4, f.get());
  put_u32(f.get(), kTnsrVersion);
  uint8_t d = uint8_t(dtype);
  uint8_t rank = uint8_t(t.rank());
  std::fwrite(&d, 1, 1, f.get());
  std::fwrite(&rank, 1, 1, f.get());
  for (int i = 0; i < t.rank(); ++i) put_u32(f.get(), uint32_t(t.dim(i)));
  size_t n = size_t(t.numel());
  if (std::fwrite(t.data(), sizeof(T), n, f.get()) != n)
    throw DataError("short write to " + path);
  if (std::fflush(f.get()) != 0) throw DataError("flush failed for " + path);
}

template <typename T>
Tensor<T> read_impl(const std::string& path, TnsrDtype expect) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw DataError("missing file: " + path);
  char magic[4];
  if (std::fread(magic, 1, 4, f.get()) != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("bad magic in " + path);
  uint32_t version = get_u32(f.get(), path);
  if (version != kTnsrVersion)
    throw DataError("unsupported TNSR version " + std::to_string(version) + " in " + path);
  uint8_t dtype = 0, rank = 0;
  if (std::fread(&dtype, 1, 1, f.get()) != 1 || std::fread(&rank, 1, 1, f.get()) != 1)
    throw DataError("truncated header in " + path);
  if (dtype != uint8_t(expect))
    throw DataError("dtype mismatch in " + path + ": expected " +
                    std::to_string(int(uint8_t(expect))) + ", found " +
                    std::to_string(int(dtype)));
  std::vector<int> shape(rank);
  for (int i = 0; i < rank; ++i) {
    uint32_t d = get_u32(f.get(), path);
    if (d == 0 || d > (1u << 28)) throw DataError("bad dimension in " + path);
    shape[size_t(i)] = int(d);
  }
  Tensor<T> t(shape);
  size_t n = size_t(t.numel());
  size_t got = std::fread(t.data(), sizeof(T), n, f.get());
  if (got != n)
    throw DataError("size mismatch in " + path + ": expected " + std::to_string(n) +
                    " elements, got " + std::to_string(got));
  unsigned char extra;
  if (std::fread(&extra, 1, 1, f.get()) == 1)
    throw DataError("trailing bytes in " + path);
  return t;
}

}  // namespace

void write_tnsr(const std::string& path, const Tensor<float>& t) {
  write_impl(path, t, TnsrDtype::f32);
}
void write_tnsr(const std::string& path, const Tensor<uint8_t>& t) {
  write_impl(path, t, TnsrDtype::u8);
}
Tensor<float> read_tnsr_f32(const std::string& path) {
  return read_impl<float>(path, TnsrDtype::f32);
}
Tensor<uint8_t> read_tnsr_u8(const std::string& path) {
  return read_impl<uint8_t>(path, TnsrDtype::u8);
}

}  // namespace taf

#pragma once

#include <string>

#include "taf/tensor.hpp"

namespace taf {

// "TNSR" container: magic 'TAFT', u32 version, u8 dtype (0=f32, 1=u8),
// u8 rank, rank x u32 dims, then the row-major little-endian payload.
inline constexpr uint32_t kTnsrVersion = 1;
enum class TnsrDtype : uint8_t { f32 = 0, u8 = 1 };

void write_tnsr(const std::string& path, const Tensor<float>& t);
void write_tnsr(const std::string& path, const Tensor<uint8_t>& t);
Tensor<float> read_tnsr_f32(const std::string& path);
Tensor<uint8_t> read_tnsr_u8(const std::string& path);

}  // namespace taf

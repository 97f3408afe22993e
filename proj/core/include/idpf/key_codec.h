#ifndef IDPF_KEY_CODEC_H_
#define IDPF_KEY_CODEC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "idpf/dpf.h"

namespace idpf {

// Binary key form:
//   "IDPF" | version (1 byte) | i (2 bytes LE) | omega | c
// omega and c are h+1 field elements each, every element tau coefficients,
// every coefficient a little-endian slot of CoefficientBytes(p) bytes.
inline constexpr std::uint8_t kKeyVersion = 1;
inline constexpr std::size_t kKeyHeaderBytes = 4 + 1 + 2;

std::size_t CoefficientBytes(std::uint32_t p);
std::size_t KeyWireSize(const FieldCtx& ctx, std::size_t h);

std::vector<std::uint8_t> EncodeKey(const FieldCtx& ctx, const DpfKey& key);

// Throws ParseError with the byte offset of the first problem. j and ell are
// recovered from i with the scheme's n.
DpfKey DecodeKey(const FieldCtx& ctx, std::size_t h, std::size_t n,
                 std::span<const std::uint8_t> bytes);

}  // namespace idpf

#endif  // IDPF_KEY_CODEC_H_

#ifndef IDPF_DIGEST_H_
#define IDPF_DIGEST_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace idpf {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest Sha256(std::span<const std::uint8_t> data);
Sha256Digest Sha256(std::string_view data);
std::string ToHex(std::span<const std::uint8_t> data);

}  // namespace idpf

#endif  // IDPF_DIGEST_H_

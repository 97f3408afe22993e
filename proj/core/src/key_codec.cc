#include "idpf/key_codec.h"

#include <bit>

#include "idpf/errors.h"

namespace idpf {

std::size_t CoefficientBytes(std::uint32_t p) {
  const int bits = std::bit_width(p - 1);
  return std::max<std::size_t>(1, (bits + 7) / 8);
}

std::size_t KeyWireSize(const FieldCtx& ctx, std::size_t h) {
  return kKeyHeaderBytes +
         2 * (h + 1) * ctx.tau() * CoefficientBytes(ctx.p());
}

std::vector<std::uint8_t> EncodeKey(const FieldCtx& ctx, const DpfKey& key) {
  if (key.omega.size() != key.share.c.size()) {
    throw InputError("omega and c lengths differ");
  }
  if (key.i > 0xffff) throw InputError("key index does not fit in 2 bytes");
  const std::size_t slot = CoefficientBytes(ctx.p());
  std::vector<std::uint8_t> out = {'I', 'D', 'P', 'F', kKeyVersion};
  out.push_back(static_cast<std::uint8_t>(key.i & 0xff));
  out.push_back(static_cast<std::uint8_t>(key.i >> 8));
  auto put = [&](const FieldElement& z) {
    if (!ctx.Contains(z)) throw InputError("element outside the field");
    for (auto c : z.coeffs()) {
      for (std::size_t b = 0; b < slot; ++b) {
        out.push_back(static_cast<std::uint8_t>((c >> (8 * b)) & 0xff));
      }
    }
  };
  for (const auto& z : key.omega) put(z);
  for (const auto& z : key.share.c) put(z);
  return out;
}

DpfKey DecodeKey(const FieldCtx& ctx, std::size_t h, std::size_t n,
                 std::span<const std::uint8_t> bytes) {
  if (n == 0) throw InputError("scheme has no servers");
  const std::size_t slot = CoefficientBytes(ctx.p());
  std::size_t pos = 0;
  auto need = [&](std::size_t count, const char* what) {
    if (bytes.size() - pos < count) {
      throw ParseError(std::string("truncated key: expected ") + what, pos);
    }
  };
  need(4, "magic");
  if (bytes[0] != 'I' || bytes[1] != 'D' || bytes[2] != 'P' || bytes[3] != 'F') {
    throw ParseError("bad magic", 0);
  }
  pos = 4;
  need(1, "version");
  if (bytes[pos] != kKeyVersion) throw ParseError("unsupported version", pos);
  ++pos;
  need(2, "key index");
  DpfKey key;
  key.i = std::size_t{bytes[pos]} | (std::size_t{bytes[pos + 1]} << 8);
  pos += 2;
  if (key.i >= 2 * n) throw ParseError("key index out of range", pos - 2);
  key.j = key.i / n;
  key.ell = key.i % n;

  std::vector<std::uint32_t> coeffs(ctx.tau());
  auto get = [&]() {
    for (auto& c : coeffs) {
      need(slot, "coefficient");
      const std::size_t at = pos;
      std::uint64_t value = 0;
      for (std::size_t b = 0; b < slot; ++b) {
        value |= std::uint64_t{bytes[pos++]} << (8 * b);
      }
      if (value >= ctx.p()) throw ParseError("coefficient not below p", at);
      c = static_cast<std::uint32_t>(value);
    }
    return ctx.FromCoeffs(coeffs);
  };
  for (std::size_t i = 0; i <= h; ++i) key.omega.push_back(get());
  key.share.ell = key.ell;
  for (std::size_t i = 0; i <= h; ++i) key.share.c.push_back(get());
  if (pos != bytes.size()) throw ParseError("trailing bytes after key", pos);
  return key;
}

}  // namespace idpf

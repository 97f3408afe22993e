#include "loaders.h"

#include "idpf/errors.h"

namespace idpf::cli {

DpfParams LoadParams(const std::string& path) {
  return ParamsFromJson(ReadJsonFile(path));
}

Loaded LoadAll(const ArtifactPaths& paths) {
  DpfParams params = LoadParams(paths.params);
  MatchingFamily family = FamilyFromJson(ReadJsonFile(paths.family), params);
  InterpolationScheme scheme = SchemeFromJson(ReadJsonFile(paths.scheme), params);
  std::string digest = ParamsDigest(params);
  Dpf dpf(params, std::move(family), std::move(scheme));
  return {std::move(params), std::move(digest), std::move(dpf)};
}

std::filesystem::path KeyPath(const std::filesystem::path& dir, std::size_t i) {
  return dir / ("key_" + std::to_string(i) + ".json");
}

std::vector<DpfKey> LoadKeys(const std::filesystem::path& dir, const Loaded& a) {
  std::vector<DpfKey> keys;
  for (std::size_t i = 0; i < a.dpf.num_keys(); ++i) {
    keys.push_back(KeyFromJson(ReadJsonFile(KeyPath(dir, i)), a.dpf));
    if (keys.back().i != i) {
      throw ArtifactMismatch(KeyPath(dir, i).string() + " holds key " +
                             std::to_string(keys.back().i));
    }
  }
  return keys;
}

std::vector<std::uint64_t> ParseList(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || item[0] == '-') {
      throw ParamError("'" + item + "' is not a non-negative integer");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace idpf::cli

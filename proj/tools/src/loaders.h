#ifndef IDPF_TOOLS_LOADERS_H_
#define IDPF_TOOLS_LOADERS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "idpf/artifacts.h"
#include "idpf/dpf.h"

namespace idpf::cli {

struct ArtifactPaths {
  std::string params;
  std::string scheme;
  std::string family;
};

struct Loaded {
  DpfParams params;
  std::string digest;
  Dpf dpf;
};

DpfParams LoadParams(const std::string& path);
Loaded LoadAll(const ArtifactPaths& paths);

std::filesystem::path KeyPath(const std::filesystem::path& dir, std::size_t i);

// Loads key_0.json .. key_{2n-1}.json from dir.
std::vector<DpfKey> LoadKeys(const std::filesystem::path& dir, const Loaded& a);

std::vector<std::uint64_t> ParseList(const std::string& text);

}  // namespace idpf::cli

#endif  // IDPF_TOOLS_LOADERS_H_

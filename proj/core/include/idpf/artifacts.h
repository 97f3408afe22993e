#ifndef IDPF_ARTIFACTS_H_
#define IDPF_ARTIFACTS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idpf/dpf.h"
#include "idpf/interpolation.h"
#include "idpf/matching_family.h"
#include "idpf/params.h"

// Canonical JSON files exchanged between pipeline stages. nlohmann::json keeps
// object keys sorted, so dump() of a value is its canonical form.
namespace idpf {

using nlohmann::json;

json ParamsToJson(const DpfParams& params);
// Rebuilds from (primes, p, tau) and requires the file to match exactly.
DpfParams ParamsFromJson(const json& j);
std::string ParamsDigest(const DpfParams& params);

json FamilyToJson(const MatchingFamily& family, bool certified);
// Re-certifies against params.S_M; throws ArtifactMismatch on failure.
MatchingFamily FamilyFromJson(const json& j, const DpfParams& params);

json SchemeToJson(const InterpolationScheme& scheme);
// Checks B against H and the multiplicity-2 identity.
InterpolationScheme SchemeFromJson(const json& j, const DpfParams& params);

json KeyToJson(const DpfKey& key, const std::string& params_digest);
// Throws ArtifactMismatch when the digest differs from the Dpf's params, or
// when the key fails its structural checks.
DpfKey KeyFromJson(const json& j, const Dpf& dpf);

// Newline-delimited decimal residues mod p.
std::vector<std::uint32_t> ParseDb(const std::string& text, std::uint32_t p);
std::string DbCanonicalText(const std::vector<std::uint32_t>& db);
std::string DbDigest(const std::vector<std::uint32_t>& db);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& content);
// Parses with ParseError on malformed text.
json ReadJsonFile(const std::filesystem::path& path);
void WriteJsonFile(const std::filesystem::path& path, const json& j);

}  // namespace idpf

#endif  // IDPF_ARTIFACTS_H_

#include "idpf/artifacts.h"

#include <fstream>
#include <sstream>
#include <tuple>

#include "idpf/digest.h"
#include "idpf/errors.h"

namespace idpf {

namespace {

std::vector<std::string> ElementStrings(const std::vector<FieldElement>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.ToString());
  return out;
}

std::vector<FieldElement> ParseElements(const FieldCtx& ctx, const json& j) {
  std::vector<FieldElement> out;
  for (const auto& s : j) out.push_back(ctx.Parse(s.get<std::string>()));
  return out;
}

// nlohmann type/key errors become ParseError so every malformed artifact
// surfaces through one exception type.
template <typename F>
auto Guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  }
}

}  // namespace

json ParamsToJson(const DpfParams& params) {
  return json{
      {"primes", params.primes},   {"m", params.m},
      {"p", params.p},             {"M", params.M},
      {"tau", params.tau},         {"zeta", params.ctx.zeta()},
      {"gamma", params.gamma.ToString()},
      {"H", ElementStrings(params.H)},
      {"S_m", params.S_m},         {"S_M", params.S_M},
      {"e", params.e},             {"n_target", params.n_target},
  };
}

DpfParams ParamsFromJson(const json& j) {
  auto [primes, p, tau] = Guard("params file", [&] {
    return std::make_tuple(j.at("primes").get<std::vector<std::uint64_t>>(),
                           j.at("p").get<std::uint32_t>(),
                           j.at("tau").get<int>());
  });
  DpfParams params = BuildParams(primes, p, tau);
  const json rebuilt = ParamsToJson(params);
  for (const auto& [key, value] : rebuilt.items()) {
    if (!j.contains(key) || j.at(key) != value) {
      throw ArtifactMismatch("params field '" + key +
                             "' does not match the parameters it claims");
    }
  }
  if (j.size() != rebuilt.size()) {
    throw ArtifactMismatch("params file has unexpected fields");
  }
  return params;
}

std::string ParamsDigest(const DpfParams& params) {
  const Sha256Digest d = Sha256(ParamsToJson(params).dump());
  return ToHex(d);
}

json FamilyToJson(const MatchingFamily& family, bool certified) {
  return json{{"M", family.M}, {"h", family.h},          {"N", family.N()},
              {"U", family.U}, {"V", family.V}, {"certified", certified}};
}

MatchingFamily FamilyFromJson(const json& j, const DpfParams& params) {
  MatchingFamily family = Guard("family file", [&] {
    MatchingFamily f;
    f.M = j.at("M").get<std::uint64_t>();
    f.h = j.at("h").get<std::size_t>();
    f.U = j.at("U").get<std::vector<ExponentVector>>();
    f.V = j.at("V").get<std::vector<ExponentVector>>();
    if (j.at("N").get<std::size_t>() != f.U.size()) {
      throw ArtifactMismatch("family N does not match |U|");
    }
    if (!j.at("certified").get<bool>()) {
      throw ArtifactMismatch("family file is not certified");
    }
    return f;
  });
  if (family.M != params.M) {
    throw ArtifactMismatch("family modulus does not match params M");
  }
  const FamilyCertificate cert = VerifyFamily(family, params.S_M);
  if (!cert.ok) throw ArtifactMismatch("family rejected: " + cert.message);
  return family;
}

json SchemeToJson(const InterpolationScheme& scheme) {
  json A = json::array();
  for (const auto& row : scheme.A) {
    A.push_back({row[0].ToString(), row[1].ToString()});
  }
  return json{{"B", ElementStrings(scheme.B)},
              {"B_logs", scheme.B_logs},
              {"n", scheme.n()},
              {"A", A},
              {"mult1", ElementStrings(scheme.mult1)}};
}

InterpolationScheme SchemeFromJson(const json& j, const DpfParams& params) {
  const auto& ctx = params.ctx;
  InterpolationScheme scheme = Guard("scheme file", [&] {
    InterpolationScheme s;
    s.B = ParseElements(ctx, j.at("B"));
    s.B_logs = j.at("B_logs").get<std::vector<std::uint64_t>>();
    s.mult1 = ParseElements(ctx, j.at("mult1"));
    for (const auto& row : j.at("A")) {
      if (row.size() != 2) throw ArtifactMismatch("scheme A rows need 2 entries");
      s.A.push_back({ctx.Parse(row[0].get<std::string>()),
                     ctx.Parse(row[1].get<std::string>())});
    }
    if (j.at("n").get<std::size_t>() != s.B.size()) {
      throw ArtifactMismatch("scheme n does not match |B|");
    }
    return s;
  });
  if (scheme.B_logs.size() != scheme.n() || scheme.A.size() != scheme.n()) {
    throw ArtifactMismatch("scheme arrays disagree in length");
  }
  for (std::size_t l = 0; l < scheme.n(); ++l) {
    if (scheme.B_logs[l] >= params.m || params.H[scheme.B_logs[l]] != scheme.B[l]) {
      throw ArtifactMismatch("scheme point " + std::to_string(l) +
                             " does not match its discrete log");
    }
  }
  const SchemeReport report = VerifyScheme(params, scheme, 0);
  if (!report.ok) {
    throw ArtifactMismatch("scheme fails the multiplicity-2 identity");
  }
  return scheme;
}

json KeyToJson(const DpfKey& key, const std::string& params_digest) {
  return json{{"i", key.i},
              {"j", key.j},
              {"ell", key.ell},
              {"omega", ElementStrings(key.omega)},
              {"c", ElementStrings(key.share.c)},
              {"params_digest", params_digest}};
}

DpfKey KeyFromJson(const json& j, const Dpf& dpf) {
  const auto& ctx = dpf.params().ctx;
  const std::string digest = Guard("key file", [&] {
    return j.at("params_digest").get<std::string>();
  });
  if (digest != ParamsDigest(dpf.params())) {
    throw ArtifactMismatch("key params_digest does not match the params file");
  }
  DpfKey key = Guard("key file", [&] {
    DpfKey k;
    k.i = j.at("i").get<std::size_t>();
    k.j = j.at("j").get<std::size_t>();
    k.ell = j.at("ell").get<std::size_t>();
    k.omega = ParseElements(ctx, j.at("omega"));
    k.share.ell = k.ell;
    k.share.c = ParseElements(ctx, j.at("c"));
    return k;
  });
  dpf.ValidateKey(key);
  return key;
}

std::vector<std::uint32_t> ParseDb(const std::string& text, std::uint32_t p) {
  std::vector<std::uint32_t> db;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(line, &used);
      } catch (const std::exception&) {
        throw ParseError("db entry is not a decimal residue", pos);
      }
      if (used != line.size()) throw ParseError("trailing text in db entry", pos);
      if (value >= p) throw ParseError("db entry not reduced mod p", pos);
      db.push_back(static_cast<std::uint32_t>(value));
    }
    pos = end + 1;
  }
  return db;
}

std::string DbCanonicalText(const std::vector<std::uint32_t>& db) {
  std::string out;
  for (auto v : db) out += std::to_string(v) + "\n";
  return out;
}

std::string DbDigest(const std::vector<std::uint32_t>& db) {
  return ToHex(Sha256(DbCanonicalText(db)));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << content;
}

json ReadJsonFile(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), e.byte);
  }
}

void WriteJsonFile(const std::filesystem::path& path, const json& j) {
  WriteFile(path, j.dump() + "\n");
}

}  // namespace idpf

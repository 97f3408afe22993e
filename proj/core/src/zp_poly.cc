#include "idpf/zp_poly.h"

#include <algorithm>
#include <tuple>

#include "idpf/errors.h"

namespace idpf::zp_poly {

bool IsPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void Normalize(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int Degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != 0) return i;
  }
  return -1;
}

std::uint32_t InvMod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r == 0) throw DivisionByZero("inverse of 0 mod p");
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Poly Add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  Normalize(r);
  return r;
}

Poly Sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  Normalize(r);
  return r;
}

Poly Mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  Poly r(acc.begin(), acc.end());
  Normalize(r);
  return r;
}

Poly Scale(const Poly& a, std::uint32_t c, std::uint32_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * c % p);
  }
  Normalize(r);
  return r;
}

std::pair<Poly, Poly> DivMod(const Poly& a, const Poly& b, std::uint32_t p) {
  const int db = Degree(b);
  if (db < 0) throw DivisionByZero("polynomial division by zero");
  Poly rem = a;
  Normalize(rem);
  const int da = Degree(rem);
  if (da < db) return {{}, rem};
  Poly quot(da - db + 1, 0);
  const std::uint32_t lead_inv = InvMod(b[db], p);
  for (int i = da; i >= db; --i) {
    const std::uint32_t c =
        static_cast<std::uint32_t>(std::uint64_t{rem[i]} * lead_inv % p);
    if (c == 0) continue;
    quot[i - db] = c;
    for (int k = 0; k <= db; ++k) {
      rem[i - db + k] = static_cast<std::uint32_t>(
          (rem[i - db + k] + p - std::uint64_t{c} * b[k] % p) % p);
    }
  }
  Normalize(quot);
  Normalize(rem);
  return {quot, rem};
}

Poly Mod(const Poly& a, const Poly& b, std::uint32_t p) {
  return DivMod(a, b, p).second;
}

Poly MakeMonic(const Poly& a, std::uint32_t p) {
  const int d = Degree(a);
  if (d < 0) return {};
  return Scale(a, InvMod(a[d], p), p);
}

Poly Gcd(Poly a, Poly b, std::uint32_t p) {
  Normalize(a);
  Normalize(b);
  while (!b.empty()) {
    Poly r = Mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return MakeMonic(a, p);
}

Poly PowMod(const Poly& base, std::uint64_t e, const Poly& modulus,
            std::uint32_t p) {
  Poly result = Mod(Poly{1}, modulus, p);
  Poly b = Mod(base, modulus, p);
  while (e > 0) {
    if (e & 1) result = Mod(Mul(result, b, p), modulus, p);
    e >>= 1;
    if (e > 0) b = Mod(Mul(b, b, p), modulus, p);
  }
  return result;
}

bool HasRoot(const Poly& a, std::uint32_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (int i = Degree(a); i >= 0; --i) acc = (acc * x + a[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

bool IsIrreducible(const Poly& f, std::uint32_t p) {
  const int d = Degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  if (d <= 3) return !HasRoot(f, p);
  // x_pk tracks X^{p^k} mod f.
  Poly x_pk = Poly{0, 1};
  const Poly x = Poly{0, 1};
  for (int k = 1; k <= d / 2; ++k) {
    x_pk = PowMod(x_pk, p, f, p);
    const Poly g = Gcd(f, Sub(x_pk, x, p), p);
    if (Degree(g) != 0) return false;
  }
  return true;
}

}  // namespace idpf::zp_poly

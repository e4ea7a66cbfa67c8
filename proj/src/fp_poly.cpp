#include "fp_poly.hpp"

#include <algorithm>

namespace frobdyn::fp {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly add(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  const std::uint64_t pp = p;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % pp;
    }
  }
  Poly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

Poly rem(Poly a, const Poly& f, std::uint32_t p) {
  const int df = degree(f);
  const std::uint32_t lead_inv = inv_mod(f[df], p);
  trim(a);
  for (int i = degree(a); i >= df; --i) {
    const std::uint32_t c = mul_mod(a[i], lead_inv, p);
    if (c == 0) continue;
    for (int j = 0; j <= df; ++j) {
      a[i - df + j] = (a[i - df + j] + p - mul_mod(c, f[j], p)) % p;
    }
  }
  trim(a);
  return a;
}

Poly divide(Poly a, const Poly& f, std::uint32_t p) {
  const int df = degree(f);
  const std::uint32_t lead_inv = inv_mod(f[df], p);
  trim(a);
  const int da = degree(a);
  if (da < df) return {};
  Poly q(da - df + 1, 0);
  for (int i = da; i >= df; --i) {
    const std::uint32_t c = mul_mod(a[i], lead_inv, p);
    q[i - df] = c;
    if (c == 0) continue;
    for (int j = 0; j <= df; ++j) {
      a[i - df + j] = (a[i - df + j] + p - mul_mod(c, f[j], p)) % p;
    }
  }
  trim(q);
  return q;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  return rem(mul(a, b, p), f, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = rem(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, f, p);
    e >>= 1;
    if (e > 0) base = mulmod(base, base, f, p);
  }
  return rem(result, f, p);
}

Poly make_monic(Poly a, std::uint32_t p) {
  trim(a);
  if (a.empty()) return a;
  const std::uint32_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = mul_mod(c, inv, p);
  return a;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), p);
}

Poly find_factor(const Poly& f, std::uint32_t p) {
  const int n = degree(f);
  const Poly x{0, 1};
  Poly xp = rem(x, f, p);  // x^{p^d} mod f
  for (int d = 1; 2 * d <= n; ++d) {
    xp = powmod(xp, p, f, p);
    Poly g = gcd(f, sub(xp, x, p), p);
    if (degree(g) >= 1 && degree(g) < n) return g;
    if (degree(g) == n) {
      // Every irreducible factor has degree d; split by exhaustive search.
      std::uint64_t count = 1;
      for (int k = 0; k < d && count <= 1000000; ++k) count *= p;
      if (count > 1000000) return f;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Poly cand(d + 1, 0);
        std::uint64_t v = idx;
        for (int k = 0; k < d; ++k) {
          cand[k] = static_cast<std::uint32_t>(v % p);
          v /= p;
        }
        cand[d] = 1;
        if (rem(f, cand, p).empty()) return cand;
      }
      return f;
    }
  }
  return {};
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace frobdyn::fp

#include "growthlab/field.hpp"

#include <sstream>

namespace growthlab {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; d++)
    if (p % d == 0) return false;
  return true;
}

namespace {

// Code = sum entry_i * p^i must fit 128 bits.
std::uint32_t encoding_cap(int n) { return n == 2 ? (1u << 21) : 16381u; }

}  // namespace

FieldParams::FieldParams(std::uint32_t p_, int n_) : p(p_), n(n_) {
  if (n != 2 && n != 3) throw ConfigError("matrix dimension must be 2 or 3");
  if (!is_prime(p)) throw ConfigError("modulus " + std::to_string(p) + " is not prime");
  if (p > encoding_cap(n))
    throw ConfigError("p=" + std::to_string(p) + " exceeds the encoding cap for n=" + std::to_string(n));
}

std::uint64_t FieldParams::group_order() const {
  std::uint64_t q = p;
  if (n == 2) return q * (q * q - 1);
  return q * q * q * (q * q * q - 1) * (q * q - 1);
}

std::uint64_t FieldParams::pow(std::uint64_t b, std::uint64_t e) const {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldParams::inv(std::uint64_t a) const {
  a %= p;
  if (a == 0) throw ConfigError("division by zero mod p");
  return pow(a, p - 2);
}

std::uint64_t FieldParams::mult_order(std::uint64_t a) const {
  a %= p;
  if (a == 0) throw ConfigError("order of zero");
  std::uint64_t v = a, k = 1;
  while (v != 1) {
    v = v * a % p;
    k++;
  }
  return k;
}

bool FieldParams::is_square(std::uint64_t a) const {
  a %= p;
  if (a == 0) return true;
  if (p == 2) return true;
  return pow(a, (p - 1) / 2) == 1;
}

std::uint32_t FieldParams::sqrt_mod(std::uint64_t a) const {
  a %= p;
  for (std::uint64_t s = 0; s < p; s++)
    if (s * s % p == a) return static_cast<std::uint32_t>(s);
  return p;
}

GroupElement GroupElement::from_entries(const FieldParams& fp, const std::vector<std::uint32_t>& entries) {
  if (static_cast<int>(entries.size()) != fp.dim())
    throw ConfigError("expected " + std::to_string(fp.dim()) + " entries");
  std::array<std::uint32_t, 9> e{};
  for (int i = 0; i < fp.dim(); i++) {
    if (entries[i] >= fp.p) throw ConfigError("entry out of range [0, p)");
    e[i] = entries[i];
  }
  GroupElement g;
  g.fp_ = fp;
  g.e_ = e;
  if (g.det() != 1) throw ConfigError("matrix is not in SL_n: det != 1");
  return g;
}

GroupElement GroupElement::identity(const FieldParams& fp) {
  std::array<std::uint32_t, 9> e{};
  for (int i = 0; i < fp.n; i++) e[i * fp.n + i] = 1;
  return GroupElement(fp, e);
}

std::uint64_t GroupElement::det() const {
  const auto& m = e_;
  std::uint64_t p = fp_.p;
  if (fp_.n == 2) {
    std::uint64_t pos = (std::uint64_t)m[0] * m[3] % p;
    std::uint64_t neg = (std::uint64_t)m[1] * m[2] % p;
    return (pos + p - neg) % p;
  }
  auto minor2 = [&](int a, int b, int c, int d) {
    std::uint64_t pos = (std::uint64_t)m[a] * m[d] % p;
    std::uint64_t neg = (std::uint64_t)m[b] * m[c] % p;
    return (pos + p - neg) % p;
  };
  std::uint64_t d = (std::uint64_t)m[0] * minor2(4, 5, 7, 8) % p;
  d = (d + p - (std::uint64_t)m[1] * minor2(3, 5, 6, 8) % p) % p;
  d = (d + (std::uint64_t)m[2] * minor2(3, 4, 6, 7) % p) % p;
  return d;
}

std::uint64_t GroupElement::trace() const {
  std::uint64_t t = 0;
  for (int i = 0; i < fp_.n; i++) t += e_[i * fp_.n + i];
  return t % fp_.p;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (a.fp_ != b.fp_) throw ConfigError("params mismatch in mul");
  const int n = a.fp_.n;
  const std::uint64_t p = a.fp_.p;
  std::array<std::uint32_t, 9> c{};
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      std::uint64_t s = 0;
      for (int k = 0; k < n; k++) s += (std::uint64_t)a.e_[i * n + k] * b.e_[k * n + j];
      c[i * n + j] = static_cast<std::uint32_t>(s % p);
    }
  return GroupElement(a.fp_, c);
}

GroupElement inv(const GroupElement& a) {
  // det = 1, so the inverse is the adjugate; no division needed.
  const std::uint64_t p = a.fp_.p;
  const auto& m = a.e_;
  std::array<std::uint32_t, 9> c{};
  if (a.fp_.n == 2) {
    c[0] = m[3];
    c[1] = static_cast<std::uint32_t>((p - m[1]) % p);
    c[2] = static_cast<std::uint32_t>((p - m[2]) % p);
    c[3] = m[0];
  } else {
    auto cof = [&](int a1, int b1, int a2, int b2) {
      std::uint64_t pos = (std::uint64_t)m[a1] * m[b2] % p;
      std::uint64_t neg = (std::uint64_t)m[b1] * m[a2] % p;
      return static_cast<std::uint32_t>((pos + p - neg) % p);
    };
    // adj(m)_{ij} = cofactor_{ji}
    c[0] = cof(4, 5, 7, 8);
    c[1] = cof(2, 1, 8, 7);
    c[2] = cof(1, 2, 4, 5);
    c[3] = cof(5, 3, 8, 6);
    c[4] = cof(0, 2, 6, 8);
    c[5] = cof(2, 0, 5, 3);
    c[6] = cof(3, 4, 6, 7);
    c[7] = cof(1, 0, 7, 6);
    c[8] = cof(0, 1, 3, 4);
  }
  return GroupElement(a.fp_, c);
}

GroupElement conjugate(const GroupElement& h, const GroupElement& g) { return mul(mul(h, g), inv(h)); }

Kappa kappa(const GroupElement& g) {
  Kappa k;
  const std::uint64_t p = g.params().p;
  if (g.params().n == 2) {
    k.count = 1;
    k.coeffs[0] = static_cast<std::uint32_t>((p - g.trace()) % p);
  } else {
    k.count = 2;
    k.coeffs[0] = static_cast<std::uint32_t>((p - g.trace()) % p);
    k.coeffs[1] = static_cast<std::uint32_t>(inv(g).trace());
  }
  return k;
}

std::uint64_t charpoly_discriminant(const GroupElement& g) {
  const std::uint64_t p = g.params().p;
  if (g.params().n == 2) {
    // lambda^2 - t*lambda + 1: disc = t^2 - 4
    std::uint64_t t = g.trace();
    return (t * t % p + p - 4 % p) % p;
  }
  // lambda^3 + a*lambda^2 + b*lambda + c with a = -tr(g), b = tr(g^-1), c = -1:
  // disc = 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2
  std::uint64_t a = (p - g.trace()) % p;
  std::uint64_t b = inv(g).trace();
  std::uint64_t c = p - 1;
  auto m = [&](std::uint64_t x, std::uint64_t y) { return x * y % p; };
  std::uint64_t t1 = m(m(m(18 % p, a), b), c);
  std::uint64_t t2 = m(m(m(4 % p, a), m(a, a)), c);
  std::uint64_t t3 = m(m(a, a), m(b, b));
  std::uint64_t t4 = m(4 % p, m(b, m(b, b)));
  std::uint64_t t5 = m(27 % p, m(c, c));
  return ((t1 + t3) % p + 3 * p - t2 % p - t4 - t5) % p;
}

bool is_regular_semisimple(const GroupElement& g) { return charpoly_discriminant(g) != 0; }

bool commute(const GroupElement& a, const GroupElement& b) { return mul(a, b) == mul(b, a); }

Code GroupElement::encode() const {
  Code c = 0;
  for (int i = fp_.dim() - 1; i >= 0; i--) c = c * fp_.p + e_[i];
  return c;
}

GroupElement GroupElement::decode(const FieldParams& fp, Code c) {
  std::array<std::uint32_t, 9> e{};
  for (int i = 0; i < fp.dim(); i++) {
    e[i] = static_cast<std::uint32_t>(c % fp.p);
    c /= fp.p;
  }
  if (c != 0) throw ConfigError("code out of range for given params");
  GroupElement g;
  g.fp_ = fp;
  g.e_ = e;
  if (g.det() != 1) throw ConfigError("code does not decode to an SL_n element");
  return g;
}

std::string GroupElement::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < fp_.n; i++) {
    os << (i ? "; " : "");
    for (int j = 0; j < fp_.n; j++) os << (j ? "," : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

std::vector<GroupElement> standard_generators(const FieldParams& fp) {
  if (fp.n == 2)
    return {GroupElement::from_entries(fp, {1, 1, 0, 1}), GroupElement::from_entries(fp, {1, 0, 1, 1})};
  return {GroupElement::from_entries(fp, {1, 1, 0, 0, 1, 0, 0, 0, 1}),
          GroupElement::from_entries(fp, {0, 1, 0, 0, 0, 1, 1, 0, 0})};
}

GroupElement random_element(const FieldParams& fp, Rng& rng) {
  const int d = fp.dim();
  const std::uint64_t p = fp.p;
  while (true) {
    std::vector<std::uint32_t> e(d);
    for (int i = 0; i < d; i++) e[i] = static_cast<std::uint32_t>(rng.below(p));
    std::uint64_t det;
    if (fp.n == 2) {
      det = ((std::uint64_t)e[0] * e[3] % p + p - (std::uint64_t)e[1] * e[2] % p) % p;
    } else {
      auto mi = [&](int a1, int b1, int a2, int b2) {
        return ((std::uint64_t)e[a1] * e[b2] % p + p - (std::uint64_t)e[b1] * e[a2] % p) % p;
      };
      det = (std::uint64_t)e[0] * mi(4, 5, 7, 8) % p;
      det = (det + p - (std::uint64_t)e[1] * mi(3, 5, 6, 8) % p) % p;
      det = (det + (std::uint64_t)e[2] * mi(3, 4, 6, 7) % p) % p;
    }
    if (det == 0) continue;
    std::uint64_t s = fp.inv(det);
    for (int j = 0; j < fp.n; j++) e[j] = static_cast<std::uint32_t>(e[j] * s % p);
    return GroupElement::from_entries(fp, e);
  }
}

bool is_upper_unitriangular(const GroupElement& g) {
  const int n = g.params().n;
  for (int i = 0; i < n; i++)
    for (int j = 0; j <= i; j++)
      if (g.at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool is_lower_unitriangular(const GroupElement& g) {
  const int n = g.params().n;
  for (int i = 0; i < n; i++)
    for (int j = i; j < n; j++)
      if (g.at(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

bool is_diagonal(const GroupElement& g) {
  const int n = g.params().n;
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (i != j && g.at(i, j) != 0) return false;
  return true;
}

bool is_scalar(const GroupElement& g) {
  if (!is_diagonal(g)) return false;
  for (int i = 1; i < g.params().n; i++)
    if (g.at(i, i) != g.at(0, 0)) return false;
  return true;
}

}  // namespace growthlab

#ifndef GROWTHLAB_FIELD_HPP
#define GROWTHLAB_FIELD_HPP

#include <array>
#include <cassert>
#include <cstdint>
#include <vector>

#include "growthlab/common.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

bool is_prime(std::uint64_t p);

/// Prime modulus and matrix dimension (2 or 3) for one experiment.
struct FieldParams {
  std::uint32_t p = 0;
  int n = 0;

  FieldParams() = default;
  FieldParams(std::uint32_t p_, int n_);

  int dim() const { return n * n; }
  bool operator==(const FieldParams& o) const { return p == o.p && n == o.n; }
  bool operator!=(const FieldParams& o) const { return !(*this == o); }

  // |SL_n(F_p)| = p^{n(n-1)/2} * prod_{i=2}^{n} (p^i - 1)
  std::uint64_t group_order() const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t neg(std::uint64_t a) const { return (p - a % p) % p; }
  std::uint64_t pow(std::uint64_t b, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  // Multiplicative order of a in F_p^*.
  std::uint64_t mult_order(std::uint64_t a) const;
  bool is_square(std::uint64_t a) const;
  // Least s in [0, p) with s^2 = a, or p if a is a non-residue.
  std::uint32_t sqrt_mod(std::uint64_t a) const;
};

struct Kappa {
  // (a_{n-1}, ..., a_1) of det(lambda*I - g); one residue for n=2, two for n=3.
  std::array<std::uint32_t, 2> coeffs{};
  int count = 0;

  bool operator==(const Kappa& o) const { return count == o.count && coeffs == o.coeffs; }
  bool operator<(const Kappa& o) const { return coeffs < o.coeffs; }
  std::uint64_t key() const { return (std::uint64_t)coeffs[0] << 32 | coeffs[1]; }
};

/// An element of SL_n(F_p): n^2 residues, row-major, determinant 1.
class GroupElement {
 public:
  GroupElement() = default;

  // Validating factory; throws on bad entries or det != 1.
  static GroupElement from_entries(const FieldParams& fp, const std::vector<std::uint32_t>& entries);
  static GroupElement identity(const FieldParams& fp);

  const FieldParams& params() const { return fp_; }
  std::uint32_t at(int i, int j) const { return e_[i * fp_.n + j]; }
  std::uint32_t entry(int k) const { return e_[k]; }

  std::uint64_t det() const;
  std::uint64_t trace() const;

  bool operator==(const GroupElement& o) const { return fp_ == o.fp_ && e_ == o.e_; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  friend GroupElement mul(const GroupElement& a, const GroupElement& b);
  friend GroupElement inv(const GroupElement& a);

  Code encode() const;
  static GroupElement decode(const FieldParams& fp, Code c);

  std::string str() const;

 private:
  GroupElement(const FieldParams& fp, const std::array<std::uint32_t, 9>& e) : fp_(fp), e_(e) {
    assert(det() == 1);
  }

  FieldParams fp_;
  std::array<std::uint32_t, 9> e_{};
};

GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
GroupElement conjugate(const GroupElement& h, const GroupElement& g);  // h g h^-1

Kappa kappa(const GroupElement& g);

// Discriminant of the characteristic polynomial, reduced mod p.
std::uint64_t charpoly_discriminant(const GroupElement& g);
bool is_regular_semisimple(const GroupElement& g);

bool commute(const GroupElement& a, const GroupElement& b);

// Standard generating pair: the two opposite transvections for n=2,
// a transvection plus the cyclic permutation matrix for n=3.
std::vector<GroupElement> standard_generators(const FieldParams& fp);

// Uniform on SL_n(F_p): sample GL_n by rejection, scale the first row by 1/det.
GroupElement random_element(const FieldParams& fp, Rng& rng);

// Shapes used throughout the structure and sum-product experiments.
bool is_upper_unitriangular(const GroupElement& g);
bool is_lower_unitriangular(const GroupElement& g);
bool is_diagonal(const GroupElement& g);
bool is_scalar(const GroupElement& g);

}  // namespace growthlab

#endif

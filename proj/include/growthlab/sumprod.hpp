#ifndef GROWTHLAB_SUMPROD_HPP
#define GROWTHLAB_SUMPROD_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "growthlab/cayley.hpp"
#include "growthlab/elemset.hpp"

namespace growthlab {

/// Subset of F_p or F_p x F_p (component-wise ring), deduplicated.
class RingSet {
 public:
  RingSet(std::uint32_t p, int m) : p_(p), m_(m) {
    if (m != 1 && m != 2) throw ConfigError("ring component count must be 1 or 2");
  }

  std::uint32_t modulus() const { return p_; }
  int components() const { return m_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  // packed elements: a + b * p (b = 0 when m = 1), sorted
  const std::vector<std::uint64_t>& packed() const { return elems_; }
  void insert(std::uint64_t a, std::uint64_t b = 0);
  bool contains(std::uint64_t a, std::uint64_t b = 0) const;

  std::uint64_t pack(std::uint64_t a, std::uint64_t b) const { return a % p_ + (b % p_) * p_; }

  void write(std::ostream& os) const;  // header "m p count", then "a" or "a,b"
  static RingSet read(std::istream& is);
  void save(const std::string& path) const;
  static RingSet load(const std::string& path);

 private:
  std::uint32_t p_;
  int m_;
  std::vector<std::uint64_t> elems_;
};

RingSet ring_add(const RingSet& A, const RingSet& B);
RingSet ring_sub(const RingSet& A, const RingSet& B);
RingSet ring_mul(const RingSet& A, const RingSet& B);

struct GkResult {
  std::uint64_t lhs = 0;      // |YA + YA - YA - YA + Y^2 - Y^2|
  std::uint64_t bound_num = 0;  // min(|A||Y|, p); pass iff 2*lhs > bound_num
  bool pass = false;
};

// Six-fold sum-product combination over F_p; Y must avoid 0.
GkResult gk_check(const RingSet& A, const RingSet& Y);

struct SumProdStats {
  std::uint64_t size_a = 0;
  std::uint64_t sum_size = 0;   // |A+A|
  std::uint64_t prod_size = 0;  // |A*A|
  double exponent = 0.0;        // log(max)/log|A| - 1
};

SumProdStats sumprod_stats(const RingSet& A);

// True iff all six maps t -> t_ii * t_jj^-1 (i != j) are injective on D.
bool roots_injective(const ElementSet& D);

struct ForgliResult {
  std::uint64_t lhs = 0;          // |(A u D)_20 n U|
  std::uint64_t orbit_group = 0;  // |O|
  std::uint64_t size_a = 0, size_d = 0;
  bool pass = false;  // lhs * (|A||D| + |O|) > |A||D||O|
};

// Growth of unipotent sets under a torus action: radius-20 ball of A u D
// intersected with the unitriangular group, against the conjugation-closure
// group O = <{t u t^-1 : t in <D>, u in <A>}>.
ForgliResult forgli_check(const ElementSet& A, const ElementSet& D,
                          const Budget& budget = Budget::from_env());

struct OgrodoResult {
  CheckStatus status = CheckStatus::NotApplicable;
  std::uint64_t lhs = 0;        // |(Y_2(A))_6|
  std::uint64_t action_count = 0;  // |Y| as distinct actions
  std::uint64_t orbit_group = 0;   // |R|
  std::uint64_t size_a = 0;
};

// Multiplicative action of Y subset F_p^* on A subset F_p.
OgrodoResult ogrodo_ring_check(const RingSet& A, const RingSet& Y);

// Conjugation action of diagonal Y on A inside the unitriangular group of SL3.
OgrodoResult ogrodo_conj_check(const ElementSet& A, const ElementSet& Y,
                               const Budget& budget = Budget::from_env());

}  // namespace growthlab

#endif

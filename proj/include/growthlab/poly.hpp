#ifndef GROWTHLAB_POLY_HPP
#define GROWTHLAB_POLY_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/elemset.hpp"

namespace growthlab {

/// Sparse multivariate polynomial over F_p in the matrix entries.
/// Terms carry an exponent per variable and a non-zero coefficient.
class PolySparse {
 public:
  struct Term {
    std::vector<std::uint8_t> exps;
    std::uint32_t coeff;
  };

  PolySparse(std::uint32_t p, int nvars) : p_(p), nvars_(nvars) {}

  static PolySparse constant(std::uint32_t p, int nvars, std::uint64_t c);
  static PolySparse variable(std::uint32_t p, int nvars, int index);

  std::uint32_t modulus() const { return p_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<std::uint8_t>& exps, std::uint64_t coeff);

  PolySparse operator+(const PolySparse& o) const;
  PolySparse operator-(const PolySparse& o) const;
  PolySparse operator*(const PolySparse& o) const;
  PolySparse scaled(std::uint64_t c) const;

  std::uint32_t eval(const std::vector<std::uint32_t>& point) const;
  std::uint32_t eval(const GroupElement& g) const;

  // "coeff:e1,e2,...,e_nvars" terms joined by "+"
  std::string format() const;
  static PolySparse parse(std::uint32_t p, int nvars, const std::string& line);

 private:
  void normalize();

  std::uint32_t p_;
  int nvars_;
  std::vector<Term> terms_;
};

struct Variety {
  std::vector<PolySparse> polys;

  bool contains(const GroupElement& g) const {
    for (const auto& f : polys)
      if (f.eval(g) != 0) return false;
    return true;
  }

  void write(std::ostream& os) const;
  static Variety read(std::istream& is, std::uint32_t p, int nvars);
  static Variety load(const std::string& path, std::uint32_t p, int nvars);
};

// det(entries) - 1 and the characteristic-polynomial discriminant, expanded
// symbolically in the n^2 matrix entries.
PolySparse det_minus_one_poly(const FieldParams& fp);
PolySparse discriminant_poly(const FieldParams& fp);

struct EscapeWitness {
  GroupElement g;
  int radius = 0;
};

/// Deterministic escape: BFS over A_m in canonical code order, returning the
/// first g (smallest code in the first successful layer) with g*x off V.
/// Empty result means the search was exhausted up to m_max.
std::optional<EscapeWitness> escape(const ElementSet& A, const Variety& V, const GroupElement& x,
                                    int m_max, const Budget& budget = Budget::from_env());

// escape specialized to the non-regular-semisimple locus {disc = 0}.
std::optional<EscapeWitness> escape_regss(const ElementSet& A, const GroupElement& g0, int m_max = 12,
                                          const Budget& budget = Budget::from_env());

}  // namespace growthlab

#endif

#ifndef GROWTHLAB_TORUS_HPP
#define GROWTHLAB_TORUS_HPP

#include <cstdint>
#include <vector>

#include "growthlab/elemset.hpp"

namespace growthlab {

/// Elements of a probe set lying on one maximal torus, identified as the
/// centralizer of a regular semisimple representative.
struct TorusCluster {
  GroupElement representative;
  ElementSet members;
};

struct TorusClusterReport {
  std::vector<TorusCluster> clusters;  // sorted by size desc, then by rep code
  std::uint64_t max_cluster = 0;
  std::uint64_t ball_size = 0;
  bool overflow = false;
};

// Expands A_k and groups its regular semisimple elements by the maximal torus
// containing them (the span of {I, g, g^2} determines the torus). Members are
// all ball elements commuting with the representative.
TorusClusterReport torus_clusters(const ElementSet& A, int k,
                                  const Budget& budget = Budget::from_env());

struct ConjClassCurve {
  std::vector<std::uint64_t> per_radius;  // distinct kappa on reg-ss elements of A_r
  std::uint64_t count = 0;                // value at radius k
  bool overflow = false;
};

ConjClassCurve conj_class_count(const ElementSet& A, int k,
                                const Budget& budget = Budget::from_env());

/// Exact centralizer-vs-class-count inequality: some g in A' has
/// |C_G(g) n A^-1 A| * |A A' A^-1| >= |A| * |Cl_G(A')|.
struct OstrogothResult {
  bool pass = false;
  std::uint64_t best_centralizer_hits = 0;
  std::uint64_t triple_size = 0;   // |A A' A^-1|
  std::uint64_t class_count = 0;   // |Cl_G(A')|
  bool class_count_restricted = false;
  std::uint64_t size_a = 0;
};

OstrogothResult ostrogoth_check(const ElementSet& A, const ElementSet& Aprime,
                                std::size_t group_cap = 100000,
                                const Budget& budget = Budget::from_env());

// Conjugacy class count of the elements of S inside the full group: kappa
// separates regular semisimple classes; the rest by orbit computation. Above
// the cap the count is restricted to the regular semisimple locus and flagged.
struct ClassCount {
  std::uint64_t count = 0;
  bool restricted = false;
};

ClassCount exact_class_count(const ElementSet& S, std::size_t group_cap = 100000);

struct WorotPoint {
  std::uint32_t c_t = 0;     // c(t)   = tr(t^-1)
  std::uint32_t c_tinv = 0;  // c(t^-1) = tr(t)
};

// Reads the spectrum pair off the characteristic polynomial and asserts the
// cubic matrix identity I - c(t) t + c(t^-1) t^2 - t^3 = 0 before returning.
WorotPoint worot_map(const GroupElement& t);

// Fiber statistics of t -> (c(t), c(t^-1)) over the split torus of SL3(F_p),
// restricted to regular semisimple t.
struct WorotFiberReport {
  std::uint64_t torus_size = 0;
  std::uint64_t regular_semisimple = 0;
  std::uint64_t max_fiber = 0;
  bool identity_holds = false;  // matrix identity verified for every tested t
};

WorotFiberReport worot_fiber_scan(std::uint32_t p);

}  // namespace growthlab

#endif

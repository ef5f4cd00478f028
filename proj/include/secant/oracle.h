#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secant/lattice.h"
#include "secant/rational.h"

namespace secant {

struct OracleOptions {
  std::uint32_t prime = 2147483647u;  // default 31-bit prime (2^31 - 1)
  std::uint64_t seed = 1;
  int trials = 3;
};

struct OracleReport {
  ModelSpec spec;
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<int> dims;   // dims[k-1] = computed dim kC, k = 1..kmax
  std::vector<int> agree;  // per k: trials whose rank equals the maximum
  bool stable = true;      // every trial agreed at every k

  int dim_at(int k) const { return dims.at(k - 1); }
};

// Exact evaluation of the parameterization: params = (t0, t1, .., t_dimX).
// Segre-Veronese models expand binomially/trinomially per factor; the flag
// model applies the nilpotent exponentials exp(t1 X1) exp(t2 X2) exp(t3 X3)
// to the highest weight vector in the PBW coordinates.
std::vector<Rational> psi_eval(const Model& model, const std::vector<Rational>& params);

// dim kC as the rank of k stacked Jacobians of the parameterization at
// independent uniformly random points over F_prime, maximized over `trials`
// draws. Lower-bounds the true dimension, equal with high probability.
int terracini_dim(const Model& model, int k, const OracleOptions& opts = {});

// Per-k profile for k = 1..kmax using nested point sets (prefix ranks), so
// the reported dimensions are nondecreasing by construction.
OracleReport terracini_profile(const Model& model, int kmax, const OracleOptions& opts = {});

std::string oracle_report_to_json(const OracleReport& report);

}  // namespace secant

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sscoord/json_io.hpp"
#include "sscoord/prob.hpp"

namespace sscoord {

// One coordination problem instance: source P_U, wiretap channel P_{YZ|X},
// and the target conditional P_{V|U} to coordinate against.
struct ProblemSpec {
  Pmf source;      // over axis "U"
  Kernel channel;  // from "X" to ("Y","Z")
  Kernel target;   // from "U" to "V"

  void validate() const;  // axis labels and alphabet consistency
};

ProblemSpec problem_from_json(const Json& j, const std::string& path);
Json to_json(const ProblemSpec& spec);

struct SearchBudget {
  int restarts = 24;        // Dirichlet-random restarts per search
  int grid_resolution = 16; // coarse simplex grid pass (small dimensions only)
  int samples = 256;        // extra random probes (more-capable check)
};

// U - W1 - V factorization of the target conditional.
struct AuxDecomposition {
  Kernel p_w1_given_u;  // "U" -> "W1"
  Kernel p_v_given_w1;  // "W1" -> "V"
  double residual = 0.0;  // l1 distance of the composed conditional from the target

  int w1_size() const { return p_w1_given_u.to()[0].size; }
};

struct WiretapInput {
  JointPmf p_w2x;  // axes ("W2", "X")

  int w2_size() const { return p_w2x.axes()[0].size; }
};

struct WiretapScores {
  double i_w2_y = 0.0;
  double i_w2_z = 0.0;
  double advantage = 0.0;  // i_w2_y - i_w2_z
};

struct RatePoint {
  bool feasible = false;
  bool boundary = false;  // transmissibility constraint met only with equality
  double r0_min = 0.0;    // bits per symbol, clamped at 0
  double i_w1_u = 0.0;
  double i_uv_w1 = 0.0;
  double i_w2_y = 0.0;
  double i_w2_z = 0.0;
  double advantage = 0.0;
  double residual = 0.0;
  std::optional<AuxDecomposition> decomposition;
  std::optional<WiretapInput> wiretap;
  std::string note;  // diagnostics when infeasible
};

Json to_json(const RatePoint& rp);

// Best U-W-V factorization of `target` found within the budget, by l1
// residual of the composed conditional. Deterministic given the seed.
AuxDecomposition decompose_markov(const Pmf& source, const Kernel& target, int w_size,
                                  const SearchBudget& budget, std::uint64_t seed);

// Builds the joint (W2,X,Y,Z) = P_{W2X} P_{YZ|X} and scores both legs.
WiretapScores wiretap_advantage(const WiretapInput& input, const Kernel& channel);

// Minimal common-randomness rate over the inner-bound region.
RatePoint min_r0_inner(const ProblemSpec& spec, const SearchBudget& budget, std::uint64_t seed);

struct MoreCapableReport {
  bool more_capable = false;
  double margin = 0.0;  // min over probed inputs of I(X;Y) - I(X;Z)
  Pmf minimizer;        // input achieving the margin
};

// Grid plus random probe of I(X;Y) - I(X;Z) over the input simplex.
MoreCapableReport is_more_capable(const Kernel& channel, int grid_resolution, int samples,
                                  std::uint64_t seed);

struct SecrecyCapacityResult {
  double c_s = 0.0;
  Pmf argmax_px;
};

SecrecyCapacityResult secrecy_capacity(const Kernel& channel, int grid_resolution,
                                       std::uint64_t seed);

// Minimal common-randomness rate over the capacity region (more-capable
// channel, reliable reconstruction). Refuses when the channel is not more
// capable.
RatePoint min_r0_corollary(const ProblemSpec& spec, const SearchBudget& budget,
                           std::uint64_t seed);

}  // namespace sscoord

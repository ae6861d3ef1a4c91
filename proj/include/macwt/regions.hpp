#pragma once
// Rate-region families over (R_k^s, R_k^o): construction for any partition of
// users allowed positive secrecy, garbage-rate systems and their LP
// feasibility, projection verification by variable elimination, partition
// reduction, closed-form maxima, and comparison reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "macwt/infomeasures.hpp"
#include "macwt/polytope.hpp"

namespace macwt {

struct RateTuple {
  std::vector<double> secret;  // R_k^s per user, bits per channel use
  std::vector<double> open;    // R_k^o per user
};

struct ClampRecord {
  std::uint32_t S = 0, Sp = 0, T = 0;
  double raw = 0.0;  // the negative difference before clamping
};

struct RegionDescriptor {
  std::uint32_t partition = 0;  // users allowed positive secrecy rate
  Polytope poly;
  std::vector<ClampRecord> clamped;
  std::uint32_t forced_zero = 0;  // users with R_k^s pinned to zero
  int family_count = 0;           // bound rows emitted before normalization
  bool clamp_applied = false;
};

struct GarbagePolytope {
  std::uint32_t partition = 0;
  Polytope poly;  // symbolic: rate and garbage variables; fixed: garbage only
};

std::vector<std::string> rate_variable_names(int users);      // R1_s,R1_o,...
std::vector<std::string> secrecy_variable_names(int users);   // R1_s,...
std::string garbage_variable_name(int user);                  // Rk_g, 1-based

std::vector<std::uint32_t> submasks_ascending(std::uint32_t mask);

// I(X_K; Y): box bound used before vertex enumeration of rate regions.
double mac_sum_rate(const MICache& mi);

struct HypothesisViolation {
  std::uint32_t S = 0;
  double receiver = 0.0;      // I(X_S; Y | X_{K'\S}, X_{K'bar})
  double eavesdropper = 0.0;  // I(X_S; Z | X_{K'bar})
};

// First subset of K' (ascending bitmask) whose receiver bound falls below the
// eavesdropper bound by more than 1e-9, if any.
std::optional<HypothesisViolation> find_hypothesis_violation(const MICache& mi,
                                                             std::uint32_t kprime);

RegionDescriptor build_region(const MICache& mi, std::uint32_t kprime, bool clamped);
RegionDescriptor build_legacy_region(const MICache& mi);
RegionDescriptor build_secrecy_region(const MICache& mi, std::uint32_t kprime, bool legacy);
GarbagePolytope build_garbage_polytope(const MICache& mi, std::uint32_t kprime,
                                       const RateTuple* fixed = nullptr);

struct ProjectionReport {
  bool match = false;
  RegionDescriptor direct;  // unclamped region over the rate variables
  Polytope projected;       // garbage system after elimination and reduction
};

ProjectionReport verify_fm_projection(const MICache& mi, std::uint32_t kprime);

std::optional<std::vector<double>> find_garbage_rates(const MICache& mi,
                                                      std::uint32_t kprime,
                                                      const RateTuple& tuple);

struct SumSecrecy {
  double value = 0.0;
  std::uint32_t argmax = 0;  // smallest maximizing partition bitmask
};

SumSecrecy max_sum_secrecy(const MICache& mi);

// Sum open rate achievable alongside the maximum sum secrecy rate; raises a
// zero-secrecy error when that maximum is 0.
double max_open_at_max_secrecy(const MICache& mi);

struct PartitionReduction {
  std::uint32_t removed = 0;    // users dropped from the partition
  std::uint32_t remaining = 0;  // partition after removal
};

PartitionReduction reduce_partition(const MICache& mi, std::uint32_t kprime);

struct SecrecyComparison {
  std::string relation;   // "equal" | "strict_inclusion"
  std::string condition;  // two users: "above_max" | "below_min" | "between"
  bool match = false;     // classification verified against the geometry
  std::vector<double> witness;  // union point outside the joint region
  double sum_difference = 0.0;
  std::vector<double> single_differences;  // per user, conditioned on the rest
};

SecrecyComparison compare_secrecy_regions(const MICache& mi);

struct BoundComparisonEntry {
  std::uint32_t S = 0, Sp = 0;
  double rhs_member = 0.0;     // bound when the user may send a secret message
  double rhs_nonmember = 0.0;  // bound when the user sends open messages only
  bool tighter = false;        // rhs_nonmember <= rhs_member + 1e-9
};

struct BoundComparison {
  int user = 0;
  std::vector<BoundComparisonEntry> entries;
  long long extra_family_count = 0;  // bounds present only in the member case
  bool all_tighter = true;
};

BoundComparison bound_family_comparison(const MICache& mi, int user);

std::string region_to_json(const RegionDescriptor& r);

}  // namespace macwt

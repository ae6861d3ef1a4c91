#pragma once
// Entropies and conditional mutual informations (bits, log base 2) over
// variable subsets of a discrete joint distribution, with a guarded cache
// keyed by subset masks, plus the bound differences shared by every rate
// region family.

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "macwt/channel.hpp"

namespace macwt {

// Subset of joint axes: users by bitmask (bit k-1 is user k) plus Y and/or Z.
struct VariableSet {
  std::uint32_t user_mask = 0;
  bool include_y = false;
  bool include_z = false;

  static VariableSet users(std::uint32_t mask) { return {mask, false, false}; }
  static VariableSet y() { return {0, true, false}; }
  static VariableSet z() { return {0, false, true}; }

  bool empty() const { return user_mask == 0 && !include_y && !include_z; }
  std::uint32_t key() const {
    return (user_mask << 2) | (include_y ? 2u : 0u) | (include_z ? 1u : 0u);
  }
  bool disjoint_from(const VariableSet& o) const {
    return (user_mask & o.user_mask) == 0 && !(include_y && o.include_y) &&
           !(include_z && o.include_z);
  }
  friend VariableSet operator|(const VariableSet& a, const VariableSet& b) {
    return {a.user_mask | b.user_mask, a.include_y || b.include_y,
            a.include_z || b.include_z};
  }
};

std::vector<int> mask_to_users(std::uint32_t mask);  // ascending, 1-based

struct Marginal {
  std::vector<int> sizes;  // kept axes in original order
  std::vector<double> p;
};

Marginal marginal_distribution(const JointDistribution& joint, VariableSet vars);

double entropy(const JointDistribution& joint, VariableSet vars);
double cond_mutual_info(const JointDistribution& joint, VariableSet left,
                        VariableSet right, VariableSet given);

class MICache {
 public:
  explicit MICache(JointDistribution joint) : joint_(std::move(joint)) {}

  const JointDistribution& joint() const { return joint_; }
  int user_count() const { return joint_.users; }
  std::uint32_t full_mask() const { return (1u << joint_.users) - 1u; }

  double entropy(VariableSet vars) const;
  double cond_mutual_info(VariableSet left, VariableSet right,
                          VariableSet given) const;

 private:
  JointDistribution joint_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint32_t, double> entropy_cache_;
  mutable std::unordered_map<std::uint64_t, double> mi_cache_;
};

struct BoundValue {
  double unclamped = 0.0;
  double clamped = 0.0;
};

// I(X_S, X_T; Y | X_{K'\S}, X_{K'bar\T}): the receiver side of a rate bound.
double bound_to_receiver(const MICache& mi, std::uint32_t kprime,
                         std::uint32_t S, std::uint32_t T);
// I(X_{S'}; Z | X_{K'bar}): the eavesdropper side.
double bound_to_eavesdropper(const MICache& mi, std::uint32_t kprime,
                             std::uint32_t Sp);
// Difference of the two sides and its positive part.
// Requires S subset of K', S' subset of S, T subset of K \ K'.
BoundValue region_rhs(const MICache& mi, std::uint32_t kprime, std::uint32_t S,
                      std::uint32_t Sp, std::uint32_t T);
BoundValue region_rhs(const JointDistribution& joint, std::uint32_t kprime,
                      std::uint32_t S, std::uint32_t Sp, std::uint32_t T);

}  // namespace macwt

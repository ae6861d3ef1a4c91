#include "macwt/infomeasures.hpp"

#include <utility>

#include "macwt/error.hpp"
#include "macwt/kernels.hpp"

namespace macwt {

namespace {

// Values in [-1e-10, 0) are floating-point cancellation noise; anything more
// negative indicates a genuine bug in the entropy computation.
constexpr double kNegativeClamp = -1e-10;

double clamp_mi(double v) {
  if (v >= 0.0) return v;
  if (v >= kNegativeClamp) return 0.0;
  throw Error(errc::internal, "mutual information evaluated below the negativity clamp",
              {{"value", v}});
}

void check_dimension(const JointDistribution& joint, VariableSet v) {
  if (joint.users < 32 && (v.user_mask >> joint.users) != 0)
    throw Error(errc::dimension, "variable set names a user beyond the channel's user count",
                {{"users", joint.users}, {"mask", v.user_mask}});
}

double entropy_of(const JointDistribution& joint, VariableSet vars) {
  check_dimension(joint, vars);
  const std::uint32_t all = (1u << joint.users) - 1u;
  if (vars.user_mask == all && vars.include_y && vars.include_z)
    return kernels::entropy_sum(joint.p.data(), joint.p.size());
  Marginal m = marginal_distribution(joint, vars);
  return kernels::entropy_sum(m.p.data(), m.p.size());
}

void check_disjoint(VariableSet l, VariableSet r, VariableSet g) {
  if (!l.disjoint_from(r) || !l.disjoint_from(g) || !r.disjoint_from(g))
    throw Error(errc::overlap, "variable sets of a mutual information must be pairwise disjoint",
                {{"left", l.key()}, {"right", r.key()}, {"given", g.key()}});
}

}  // namespace

std::vector<int> mask_to_users(std::uint32_t mask) {
  std::vector<int> out;
  for (int k = 0; mask >> k; ++k)
    if ((mask >> k) & 1u) out.push_back(k + 1);
  return out;
}

Marginal marginal_distribution(const JointDistribution& joint, VariableSet vars) {
  check_dimension(joint, vars);
  const int n_axes = joint.users + 2;
  std::vector<char> keep(n_axes, 0);
  for (int k = 0; k < joint.users; ++k) keep[k] = (vars.user_mask >> k) & 1u;
  keep[joint.y_axis()] = vars.include_y;
  keep[joint.z_axis()] = vars.include_z;

  Marginal out;
  std::size_t out_size = 1;
  for (int a = 0; a < n_axes; ++a)
    if (keep[a]) {
      out.sizes.push_back(joint.axis_sizes[a]);
      out_size *= static_cast<std::size_t>(joint.axis_sizes[a]);
    }

  // The maximal suffix of axes with one keep status is handled per prefix
  // combination by a single contiguous kernel call.
  int s = n_axes - 1;
  while (s > 0 && keep[s - 1] == keep[n_axes - 1]) --s;
  std::size_t block = 1;
  for (int a = s; a < n_axes; ++a) block *= static_cast<std::size_t>(joint.axis_sizes[a]);
  const bool suffix_kept = keep[n_axes - 1];

  std::vector<std::size_t> out_stride(s, 0);
  std::size_t stride = suffix_kept ? block : 1;
  for (int a = s - 1; a >= 0; --a)
    if (keep[a]) {
      out_stride[a] = stride;
      stride *= static_cast<std::size_t>(joint.axis_sizes[a]);
    }

  out.p.assign(out_size, 0.0);
  std::vector<int> idx(s, 0);
  const double* src = joint.p.data();
  std::size_t in_off = 0;
  for (;;) {
    std::size_t dst = 0;
    for (int a = 0; a < s; ++a)
      if (keep[a]) dst += static_cast<std::size_t>(idx[a]) * out_stride[a];
    if (suffix_kept)
      kernels::add_inplace(out.p.data() + dst, src + in_off, block);
    else
      out.p[dst] += kernels::sum(src + in_off, block);
    in_off += block;
    int a = s - 1;
    for (; a >= 0; --a) {
      if (++idx[a] < joint.axis_sizes[a]) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return out;
}

double entropy(const JointDistribution& joint, VariableSet vars) {
  return entropy_of(joint, vars);
}

double cond_mutual_info(const JointDistribution& joint, VariableSet left,
                        VariableSet right, VariableSet given) {
  check_disjoint(left, right, given);
  if (left.empty() || right.empty()) return 0.0;
  const double v = entropy_of(joint, left | given) + entropy_of(joint, right | given) -
                   entropy_of(joint, given) - entropy_of(joint, left | right | given);
  return clamp_mi(v);
}

double MICache::entropy(VariableSet vars) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = entropy_cache_.try_emplace(vars.key(), 0.0);
  if (inserted) it->second = entropy_of(joint_, vars);
  return it->second;
}

double MICache::cond_mutual_info(VariableSet left, VariableSet right,
                                 VariableSet given) const {
  check_disjoint(left, right, given);
  if (left.empty() || right.empty()) return 0.0;
  std::uint64_t kl = left.key(), kr = right.key();
  if (kl > kr) std::swap(kl, kr);
  const std::uint64_t key = (kl << 40) | (kr << 20) | given.key();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mi_cache_.find(key);
    if (it != mi_cache_.end()) return it->second;
  }
  const double v = clamp_mi(entropy(left | given) + entropy(right | given) -
                            entropy(given) - entropy(left | right | given));
  std::lock_guard<std::mutex> lock(mu_);
  mi_cache_.emplace(key, v);
  return v;
}

namespace {

void check_bound_masks(const MICache& mi, std::uint32_t kprime, std::uint32_t S,
                       std::uint32_t Sp, std::uint32_t T) {
  const std::uint32_t full = mi.full_mask();
  if ((kprime & ~full) != 0)
    throw Error(errc::subset, "partition is not a subset of the user set",
                {{"partition", mask_to_users(kprime)}, {"users", mi.user_count()}});
  if ((S & ~kprime) != 0 || (Sp & ~S) != 0 || (T & (kprime | ~full)) != 0)
    throw Error(errc::subset,
                "bound arguments must satisfy S within K', S' within S, T within K minus K'",
                {{"partition", mask_to_users(kprime)},
                 {"S", mask_to_users(S)},
                 {"Sp", mask_to_users(Sp)},
                 {"T", mask_to_users(T)}});
}

}  // namespace

double bound_to_receiver(const MICache& mi, std::uint32_t kprime, std::uint32_t S,
                         std::uint32_t T) {
  check_bound_masks(mi, kprime, S, S, T);
  const std::uint32_t rest = mi.full_mask() & ~(S | T);
  return mi.cond_mutual_info(VariableSet::users(S | T), VariableSet::y(),
                             VariableSet::users(rest));
}

double bound_to_eavesdropper(const MICache& mi, std::uint32_t kprime, std::uint32_t Sp) {
  check_bound_masks(mi, kprime, Sp, Sp, 0);
  const std::uint32_t comp = mi.full_mask() & ~kprime;
  return mi.cond_mutual_info(VariableSet::users(Sp), VariableSet::z(),
                             VariableSet::users(comp));
}

BoundValue region_rhs(const MICache& mi, std::uint32_t kprime, std::uint32_t S,
                      std::uint32_t Sp, std::uint32_t T) {
  check_bound_masks(mi, kprime, S, Sp, T);
  const double a = bound_to_receiver(mi, kprime, S, T);
  const double b = bound_to_eavesdropper(mi, kprime, Sp);
  const double diff = a - b;
  return {diff, diff > 0.0 ? diff : 0.0};
}

BoundValue region_rhs(const JointDistribution& joint, std::uint32_t kprime,
                      std::uint32_t S, std::uint32_t Sp, std::uint32_t T) {
  MICache mi(joint);
  return region_rhs(mi, kprime, S, Sp, T);
}

}  // namespace macwt

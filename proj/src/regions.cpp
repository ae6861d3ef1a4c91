// Region construction and analysis over secret and open rate variables.
#include "macwt/regions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "macwt/error.hpp"
#include "macwt/simplex.hpp"

namespace macwt {

namespace {

std::string format12(double v) {
  if (v == 0.0) v = 0.0;  // canonicalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

nlohmann::json user_array(std::uint32_t mask) {
  nlohmann::json a = nlohmann::json::array();
  for (int k : mask_to_users(mask)) a.push_back(k);
  return a;
}

void append_user_array(std::string& s, std::uint32_t mask) {
  s += '[';
  bool first = true;
  for (int k : mask_to_users(mask)) {
    if (!first) s += ',';
    first = false;
    s += std::to_string(k);
  }
  s += ']';
}

void check_partition(const MICache& mi, std::uint32_t kprime) {
  if ((kprime & ~mi.full_mask()) != 0) {
    throw Error(errc::subset, "partition contains users outside the channel",
                {{"partition", user_array(kprime)},
                 {"users", mi.user_count()}});
  }
}

// Column of R_k^s (slot 0) or R_k^o (slot 1) in the rate variable order.
int rate_col(int user, int slot) { return 2 * (user - 1) + slot; }

void add_users(std::vector<long long>& coeffs, std::uint32_t mask, int slot) {
  for (int k : mask_to_users(mask)) coeffs[rate_col(k, slot)] += 1;
}

void push_nonneg_rows(Polytope& p) {
  for (int j = 0; j < p.dim(); ++j) {
    LinearInequality row;
    row.coeffs.assign(p.dim(), 0);
    row.coeffs[j] = -1;
    row.rhs = 0.0;
    p.ineqs.push_back(std::move(row));
  }
}

void push_forced_zero(Polytope& p, std::uint32_t users, int dim) {
  for (int k : mask_to_users(users)) {
    LinearInequality up, down;
    up.coeffs.assign(dim, 0);
    up.coeffs[rate_col(k, 0)] = 1;
    up.rhs = 0.0;
    down.coeffs.assign(dim, 0);
    down.coeffs[rate_col(k, 0)] = -1;
    down.rhs = 0.0;
    p.ineqs.push_back(std::move(up));
    p.ineqs.push_back(std::move(down));
  }
}

long long pow3(int e) {
  long long v = 1;
  for (int i = 0; i < e; ++i) v *= 3;
  return v;
}

}  // namespace

std::vector<std::string> rate_variable_names(int users) {
  std::vector<std::string> names;
  names.reserve(2 * static_cast<std::size_t>(users));
  for (int k = 1; k <= users; ++k) {
    names.push_back("R" + std::to_string(k) + "_s");
    names.push_back("R" + std::to_string(k) + "_o");
  }
  return names;
}

std::vector<std::string> secrecy_variable_names(int users) {
  std::vector<std::string> names;
  for (int k = 1; k <= users; ++k) names.push_back("R" + std::to_string(k) + "_s");
  return names;
}

std::string garbage_variable_name(int user) {
  return "R" + std::to_string(user) + "_g";
}

std::vector<std::uint32_t> submasks_ascending(std::uint32_t mask) {
  std::vector<std::uint32_t> out;
  std::uint32_t s = mask;
  while (true) {
    out.push_back(s);
    if (s == 0) break;
    s = (s - 1) & mask;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

double mac_sum_rate(const MICache& mi) {
  return mi.cond_mutual_info(VariableSet::users(mi.full_mask()), VariableSet::y(),
                             {});
}

std::optional<HypothesisViolation> find_hypothesis_violation(const MICache& mi,
                                                             std::uint32_t kprime) {
  check_partition(mi, kprime);
  for (std::uint32_t S : submasks_ascending(kprime)) {
    if (S == 0) continue;
    double lhs = bound_to_receiver(mi, kprime, S, 0);
    double rhs = bound_to_eavesdropper(mi, kprime, S);
    if (lhs - rhs < -1e-9) return HypothesisViolation{S, lhs, rhs};
  }
  return std::nullopt;
}

RegionDescriptor build_region(const MICache& mi, std::uint32_t kprime,
                              bool clamped) {
  check_partition(mi, kprime);
  const int K = mi.user_count();
  const std::uint32_t kbar = mi.full_mask() & ~kprime;

  RegionDescriptor r;
  r.partition = kprime;
  r.forced_zero = kbar;
  r.clamp_applied = clamped;
  r.poly.vars = rate_variable_names(K);
  const int dim = 2 * K;

  for (std::uint32_t S : submasks_ascending(kprime)) {
    for (std::uint32_t Sp : submasks_ascending(S)) {
      for (std::uint32_t T : submasks_ascending(kbar)) {
        BoundValue b = region_rhs(mi, kprime, S, Sp, T);
        if (clamped && b.unclamped < 0.0) r.clamped.push_back({S, Sp, T, b.unclamped});
        LinearInequality row;
        row.coeffs.assign(dim, 0);
        add_users(row.coeffs, S, 0);
        add_users(row.coeffs, S & ~Sp, 1);
        add_users(row.coeffs, T, 1);
        row.rhs = clamped ? b.clamped : b.unclamped;
        r.poly.ineqs.push_back(std::move(row));
        ++r.family_count;
      }
    }
  }
  push_forced_zero(r.poly, kbar, dim);
  push_nonneg_rows(r.poly);
  r.poly.normalize();
  return r;
}

RegionDescriptor build_legacy_region(const MICache& mi) {
  return build_region(mi, mi.full_mask(), true);
}

RegionDescriptor build_secrecy_region(const MICache& mi, std::uint32_t kprime,
                                      bool legacy) {
  check_partition(mi, kprime);
  const int K = mi.user_count();
  const std::uint32_t scope = legacy ? mi.full_mask() : kprime;

  RegionDescriptor r;
  r.partition = scope;
  r.forced_zero = legacy ? 0 : (mi.full_mask() & ~kprime);
  r.clamp_applied = legacy;
  r.poly.vars = secrecy_variable_names(K);

  for (std::uint32_t S : submasks_ascending(scope)) {
    BoundValue b = region_rhs(mi, scope, S, S, 0);
    if (legacy && b.unclamped < 0.0) r.clamped.push_back({S, S, 0, b.unclamped});
    LinearInequality row;
    row.coeffs.assign(K, 0);
    for (int k : mask_to_users(S)) row.coeffs[k - 1] += 1;
    row.rhs = legacy ? b.clamped : b.unclamped;
    r.poly.ineqs.push_back(std::move(row));
    ++r.family_count;
  }
  if (!legacy) {
    for (int k : mask_to_users(r.forced_zero)) {
      LinearInequality up, down;
      up.coeffs.assign(K, 0);
      up.coeffs[k - 1] = 1;
      up.rhs = 0.0;
      down.coeffs.assign(K, 0);
      down.coeffs[k - 1] = -1;
      down.rhs = 0.0;
      r.poly.ineqs.push_back(std::move(up));
      r.poly.ineqs.push_back(std::move(down));
    }
  }
  push_nonneg_rows(r.poly);
  r.poly.normalize();
  return r;
}

GarbagePolytope build_garbage_polytope(const MICache& mi, std::uint32_t kprime,
                                       const RateTuple* fixed) {
  check_partition(mi, kprime);
  const int K = mi.user_count();
  const std::uint32_t kbar = mi.full_mask() & ~kprime;
  const std::vector<int> gk = mask_to_users(kprime);
  const int m = static_cast<int>(gk.size());

  GarbagePolytope gp;
  gp.partition = kprime;

  // Column of g_k, and of the rate variables in symbolic mode.
  auto gcol = [&](int user) {
    int base = fixed ? 0 : 2 * K;
    int pos = static_cast<int>(std::lower_bound(gk.begin(), gk.end(), user) -
                               gk.begin());
    return base + pos;
  };
  const int dim = fixed ? m : 2 * K + m;

  if (fixed) {
    for (int k : gk) gp.poly.vars.push_back(garbage_variable_name(k));
  } else {
    gp.poly.vars = rate_variable_names(K);
    for (int k : gk) gp.poly.vars.push_back(garbage_variable_name(k));
  }

  auto open_sum = [&](std::uint32_t mask) {
    double s = 0.0;
    for (int k : mask_to_users(mask)) s += fixed->open[k - 1];
    return s;
  };
  auto secret_sum = [&](std::uint32_t mask) {
    double s = 0.0;
    for (int k : mask_to_users(mask)) s += fixed->secret[k - 1];
    return s;
  };

  for (int k : gk) {
    LinearInequality row;
    row.coeffs.assign(dim, 0);
    row.coeffs[gcol(k)] = -1;
    row.rhs = 0.0;
    gp.poly.ineqs.push_back(std::move(row));
  }

  for (std::uint32_t S : submasks_ascending(kprime)) {
    for (std::uint32_t T : submasks_ascending(kbar)) {
      double a = bound_to_receiver(mi, kprime, S, T);
      LinearInequality row;
      row.coeffs.assign(dim, 0);
      for (int k : mask_to_users(S)) row.coeffs[gcol(k)] += 1;
      if (fixed) {
        row.rhs = a - secret_sum(S) - open_sum(S) - open_sum(T);
      } else {
        add_users(row.coeffs, S, 0);
        add_users(row.coeffs, S, 1);
        add_users(row.coeffs, T, 1);
        row.rhs = a;
      }
      gp.poly.ineqs.push_back(std::move(row));
    }
  }

  for (std::uint32_t S : submasks_ascending(kprime)) {
    double b = bound_to_eavesdropper(mi, kprime, S);
    LinearInequality row;
    row.coeffs.assign(dim, 0);
    for (int k : mask_to_users(S)) row.coeffs[gcol(k)] -= 1;
    if (fixed) {
      row.rhs = -b + open_sum(S);
    } else {
      for (int k : mask_to_users(S)) row.coeffs[rate_col(k, 1)] -= 1;
      row.rhs = -b;
    }
    gp.poly.ineqs.push_back(std::move(row));
  }

  if (fixed) {
    for (int k : mask_to_users(kbar)) {
      LinearInequality up, down;
      up.coeffs.assign(dim, 0);
      up.rhs = -fixed->secret[k - 1];
      down.coeffs.assign(dim, 0);
      down.rhs = fixed->secret[k - 1];
      gp.poly.ineqs.push_back(std::move(up));
      gp.poly.ineqs.push_back(std::move(down));
    }
  } else {
    push_forced_zero(gp.poly, kbar, dim);
  }
  gp.poly.normalize();
  return gp;
}

ProjectionReport verify_fm_projection(const MICache& mi, std::uint32_t kprime) {
  check_partition(mi, kprime);
  if (auto v = find_hypothesis_violation(mi, kprime)) {
    throw Error(errc::hypothesis,
                "receiver bound falls below the eavesdropper bound",
                {{"S", user_array(v->S)},
                 {"receiver", v->receiver},
                 {"eavesdropper", v->eavesdropper}});
  }

  ProjectionReport rep;
  rep.direct = build_region(mi, kprime, /*clamped=*/false);

  GarbagePolytope sym = build_garbage_polytope(mi, kprime, nullptr);
  std::vector<std::string> gnames;
  for (int k : mask_to_users(kprime)) gnames.push_back(garbage_variable_name(k));
  Polytope proj = fm_eliminate_all(std::move(sym.poly), gnames);
  rep.projected = remove_redundant(proj);

  double box = mac_sum_rate(mi);
  rep.match = polytope_equal(with_box(rep.direct.poly, box),
                             with_box(rep.projected, box));
  return rep;
}

std::optional<std::vector<double>> find_garbage_rates(const MICache& mi,
                                                      std::uint32_t kprime,
                                                      const RateTuple& tuple) {
  check_partition(mi, kprime);
  const int K = mi.user_count();
  if (static_cast<int>(tuple.secret.size()) != K ||
      static_cast<int>(tuple.open.size()) != K) {
    throw Error(errc::dimension, "rate tuple length must match the user count",
                {{"users", K},
                 {"secret", tuple.secret.size()},
                 {"open", tuple.open.size()}});
  }
  for (int k = 1; k <= K; ++k) {
    for (double v : {tuple.secret[k - 1], tuple.open[k - 1]}) {
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(errc::schema, "rate tuple entries must be nonnegative and finite",
                    {{"user", k}});
      }
    }
  }

  GarbagePolytope gp = build_garbage_polytope(mi, kprime, &tuple);
  const int m = gp.poly.dim();
  std::vector<LPRow> rows;
  rows.reserve(gp.poly.ineqs.size());
  for (const LinearInequality& q : gp.poly.ineqs) {
    LPRow lr;
    lr.coeffs.assign(q.coeffs.begin(), q.coeffs.end());
    lr.rhs = q.rhs;
    rows.push_back(std::move(lr));
  }
  LPSolution sol = feasible_point(m, rows, std::vector<bool>(m, true));
  if (sol.status != LPStatus::optimal) return std::nullopt;
  return sol.point;
}

SumSecrecy max_sum_secrecy(const MICache& mi) {
  SumSecrecy best;
  for (std::uint32_t kp : submasks_ascending(mi.full_mask())) {
    if (kp == 0) continue;
    double v = region_rhs(mi, kp, kp, kp, 0).clamped;
    if (v > best.value + 1e-12) {
      best.value = v;
      best.argmax = kp;
    }
  }
  return best;
}

double max_open_at_max_secrecy(const MICache& mi) {
  SumSecrecy ss = max_sum_secrecy(mi);
  if (ss.value <= 0.0) {
    throw Error(errc::zero_secrecy,
                "maximum sum secrecy rate is zero; the open rates follow the "
                "plain multiple-access region",
                {{"max_sum_secrecy", 0.0}});
  }
  const std::uint32_t kp = ss.argmax;
  const std::uint32_t kbar = mi.full_mask() & ~kp;
  double open = mi.cond_mutual_info(VariableSet::users(kbar), VariableSet::y(), {});
  open += mi.cond_mutual_info(VariableSet::users(kp), VariableSet::z(),
                              VariableSet::users(kbar));
  return open;
}

PartitionReduction reduce_partition(const MICache& mi, std::uint32_t kprime) {
  check_partition(mi, kprime);
  auto diff = [&](std::uint32_t A) {
    return A == 0 ? 0.0 : region_rhs(mi, kprime, A, A, 0).unclamped;
  };
  for (std::uint32_t K0 : submasks_ascending(kprime)) {
    if (diff(K0) > 1e-9) continue;
    const std::uint32_t rest = kprime & ~K0;
    bool supersets_positive = true;
    for (std::uint32_t S : submasks_ascending(rest)) {
      if (S == 0) continue;
      if (diff(K0 | S) <= 1e-9) {
        supersets_positive = false;
        break;
      }
    }
    if (supersets_positive) return {K0, rest};
  }
  throw Error(errc::internal, "no removable subset found for the partition",
              {{"partition", user_array(kprime)}});
}

SecrecyComparison compare_secrecy_regions(const MICache& mi) {
  const int K = mi.user_count();
  const std::uint32_t full = mi.full_mask();

  SecrecyComparison out;
  out.sum_difference = region_rhs(mi, full, full, full, 0).unclamped;
  for (int k = 1; k <= K; ++k) {
    const std::uint32_t m = 1u << (k - 1);
    out.single_differences.push_back(region_rhs(mi, m, m, m, 0).unclamped);
  }

  Polytope legacy = build_secrecy_region(mi, full, /*legacy=*/true).poly;
  std::vector<Polytope> members;
  for (std::uint32_t kp : submasks_ascending(full)) {
    members.push_back(build_secrecy_region(mi, kp, /*legacy=*/false).poly);
  }

  InclusionReport ab = union_included({legacy}, members);
  InclusionReport ba = union_included(members, {legacy});

  bool strict = false;
  if (K == 2) {
    const double d12 = out.sum_difference;
    const double d1 = out.single_differences[0];
    const double d2 = out.single_differences[1];
    const double mx = std::max(d1, d2);
    const double mn = std::min(d1, d2);
    if (d12 >= mx - 1e-9) {
      out.condition = "above_max";
    } else if (d12 < mn - 1e-9) {
      out.condition = "below_min";
      strict = true;
    } else {
      out.condition = "between";
      strict = true;
    }
  } else {
    strict = !(ab.included && ba.included);
  }
  out.relation = strict ? "strict_inclusion" : "equal";

  if (!strict) {
    out.match = ab.included && ba.included;
    return out;
  }

  // Largest single-user difference first: its axis point belongs to that
  // user's own region but exceeds the legacy sum bound in the strict cases.
  std::vector<int> order(K);
  for (int k = 0; k < K; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return out.single_differences[a] > out.single_differences[b];
  });
  for (int idx : order) {
    std::vector<double> w(K, 0.0);
    w[idx] = std::max(out.single_differences[idx], 0.0);
    if (union_contains(members, w) && !contains(legacy, w)) {
      out.witness = w;
      out.match = ab.included;
      return out;
    }
  }
  if (!ba.included && !ba.witness.empty() && !contains(legacy, ba.witness)) {
    out.witness = ba.witness;
    out.match = ab.included;
    return out;
  }
  out.match = false;
  return out;
}

BoundComparison bound_family_comparison(const MICache& mi, int user) {
  const int K = mi.user_count();
  if (K < 2) {
    throw Error(errc::dimension, "bound comparison needs at least two users",
                {{"users", K}});
  }
  if (user < 1 || user > K) {
    throw Error(errc::subset, "user outside the channel", {{"user", user}});
  }
  const std::uint32_t full = mi.full_mask();
  const std::uint32_t rest = full & ~(1u << (user - 1));

  BoundComparison out;
  out.user = user;
  out.extra_family_count = pow3(K - 1);
  for (std::uint32_t S : submasks_ascending(rest)) {
    for (std::uint32_t Sp : submasks_ascending(S)) {
      BoundComparisonEntry e;
      e.S = S;
      e.Sp = Sp;
      double a = bound_to_receiver(mi, full, S, 0);
      e.rhs_member = a - bound_to_eavesdropper(mi, full, Sp);
      e.rhs_nonmember = a - bound_to_eavesdropper(mi, rest, Sp);
      e.tighter = e.rhs_nonmember <= e.rhs_member + 1e-9;
      out.all_tighter = out.all_tighter && e.tighter;
      out.entries.push_back(e);
    }
  }
  return out;
}

std::string region_to_json(const RegionDescriptor& r) {
  std::string s = polytope_to_json(r.poly);
  s.pop_back();  // reopen the polytope object to append region fields
  s += ",\"partition\":";
  append_user_array(s, r.partition);
  s += ",\"clamped\":[";
  for (std::size_t i = 0; i < r.clamped.size(); ++i) {
    if (i) s += ',';
    s += "{\"S\":";
    append_user_array(s, r.clamped[i].S);
    s += ",\"Sp\":";
    append_user_array(s, r.clamped[i].Sp);
    s += ",\"T\":";
    append_user_array(s, r.clamped[i].T);
    s += ",\"raw\":";
    s += format12(r.clamped[i].raw);
    s += '}';
  }
  s += "],\"forced_zero\":";
  append_user_array(s, r.forced_zero);
  s += '}';
  return s;
}

}  // namespace macwt

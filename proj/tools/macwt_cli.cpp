// macwt: command-line front end for the multiple-access wiretap channel
// toolkit.  Loads a channel spec, runs one region operation, and writes
// deterministic JSON (12 significant digits) or CSV.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "macwt/channel.hpp"
#include "macwt/error.hpp"
#include "macwt/infomeasures.hpp"
#include "macwt/polytope.hpp"
#include "macwt/regions.hpp"

namespace {

using namespace macwt;

std::string format12(double v) {
  if (v == 0.0) v = 0.0;  // canonicalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("usage", "cannot read input file", {{"path", path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  bool terminated = !text.empty() && text.back() == '\n';
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (!terminated) std::fputc('\n', stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("usage", "cannot write output file", {{"path", out_path}});
  out << text;
  if (!terminated) out << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() == 1 && parts[0].empty()) parts.clear();
  return parts;
}

int parse_int(const std::string& tok) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw Error("usage", "expected an integer", {{"token", tok}});
  }
  if (used != tok.size()) throw Error("usage", "expected an integer", {{"token", tok}});
  return v;
}

double parse_double(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw Error("usage", "expected a number", {{"token", tok}});
  }
  if (used != tok.size()) throw Error("usage", "expected a number", {{"token", tok}});
  return v;
}

// Comma-separated 1-based user list; empty string selects the empty set.
std::uint32_t parse_users(const std::string& s, int K) {
  std::uint32_t mask = 0;
  for (const std::string& tok : split(s, ',')) {
    int u = parse_int(tok);
    if (u < 1 || u > K) {
      throw Error("usage", "user outside 1..K", {{"user", u}, {"users", K}});
    }
    std::uint32_t bit = 1u << (u - 1);
    if (mask & bit) throw Error("usage", "duplicate user", {{"user", u}});
    mask |= bit;
  }
  return mask;
}

// Comma-separated mix of user numbers and the letters y, z.
VariableSet parse_varset(const std::string& s, int K) {
  VariableSet v;
  for (const std::string& tok : split(s, ',')) {
    if (tok == "y" || tok == "Y") {
      v.include_y = true;
    } else if (tok == "z" || tok == "Z") {
      v.include_z = true;
    } else {
      int u = parse_int(tok);
      if (u < 1 || u > K) {
        throw Error("usage", "user outside 1..K", {{"user", u}, {"users", K}});
      }
      v.user_mask |= 1u << (u - 1);
    }
  }
  return v;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_double(tok));
  return out;
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

void append_double_array(std::string& s, const std::vector<double>& v) {
  s += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format12(v[i]);
  }
  s += ']';
}

MICache load_cache(const std::string& path) {
  ChannelSpec spec = parse_channel(read_file(path));
  return MICache(joint_distribution(spec));
}

Polytope substitute_vars(const Polytope& p,
                         const std::vector<std::pair<int, double>>& fixed) {
  std::vector<bool> drop(p.vars.size(), false);
  std::vector<double> value(p.vars.size(), 0.0);
  for (auto [col, v] : fixed) {
    drop[col] = true;
    value[col] = v;
  }
  Polytope q;
  for (std::size_t j = 0; j < p.vars.size(); ++j) {
    if (!drop[j]) q.vars.push_back(p.vars[j]);
  }
  for (const LinearInequality& row : p.ineqs) {
    LinearInequality r;
    r.rhs = row.rhs;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
      if (drop[j]) {
        r.rhs -= static_cast<double>(row.coeffs[j]) * value[j];
      } else {
        r.coeffs.push_back(row.coeffs[j]);
      }
    }
    q.ineqs.push_back(std::move(r));
  }
  return q;
}

Polytope reorder_vars(const Polytope& p, const std::vector<std::string>& order) {
  std::vector<int> src;
  for (const std::string& name : order) src.push_back(p.var_index(name));
  Polytope q;
  q.vars = order;
  for (const LinearInequality& row : p.ineqs) {
    LinearInequality r;
    r.rhs = row.rhs;
    for (int c : src) r.coeffs.push_back(row.coeffs[c]);
    q.ineqs.push_back(std::move(r));
  }
  return q;
}

struct Options {
  std::string input;
  std::string out;
  std::string partition;
  std::string left, right, given;
  std::string point;
  std::string secret, open;
  std::string axes;
  std::vector<std::string> fix;
  int user = 0;
  bool unclamped = false;
  bool legacy = false;
  bool symbolic = false;
  double tol = 1e-9;
  int threads = 1;
};

std::string run_region(const Options& o) {
  MICache mi = load_cache(o.input);
  std::uint32_t kp = parse_users(o.partition, mi.user_count());
  return region_to_json(build_region(mi, kp, !o.unclamped));
}

std::string run_region_union(const Options& o) {
  MICache mi = load_cache(o.input);
  std::string s = "{\"members\":[";
  bool first = true;
  for (std::uint32_t kp : submasks_ascending(mi.full_mask())) {
    if (!first) s += ',';
    first = false;
    s += region_to_json(build_region(mi, kp, true));
  }
  s += "]}";
  return s;
}

std::string run_secrecy_region(const Options& o) {
  MICache mi = load_cache(o.input);
  std::uint32_t kp = parse_users(o.partition, mi.user_count());
  return region_to_json(build_secrecy_region(mi, kp, o.legacy));
}

std::string run_validate(const Options& o) {
  ChannelSpec spec = parse_channel(read_file(o.input));
  std::string s = "{\"valid\":true,\"users\":";
  s += std::to_string(spec.user_count());
  s += ",\"y_size\":" + std::to_string(spec.y_alphabet);
  s += ",\"z_size\":" + std::to_string(spec.z_alphabet);
  s += ",\"inputs\":" + std::to_string(spec.input_combinations());
  s += '}';
  return s;
}

std::string run_mi(const Options& o) {
  MICache mi = load_cache(o.input);
  const int K = mi.user_count();
  double v = mi.cond_mutual_info(parse_varset(o.left, K), parse_varset(o.right, K),
                                 parse_varset(o.given, K));
  return "{\"value\":" + format12(v) + "}";
}

std::string run_check(const Options& o) {
  Polytope p = polytope_from_json(read_file(o.input));
  std::vector<double> point = parse_doubles(o.point);
  bool inside = contains(p, point, o.tol);
  std::string s = "{\"contains\":";
  s += inside ? "true" : "false";
  s += ",\"tol\":" + format12(o.tol) + "}";
  return s;
}

std::string run_garbage(const Options& o) {
  MICache mi = load_cache(o.input);
  const int K = mi.user_count();
  std::uint32_t kp = parse_users(o.partition, K);
  if (o.symbolic) {
    return polytope_to_json(build_garbage_polytope(mi, kp, nullptr).poly);
  }
  RateTuple tuple{parse_doubles(o.secret), parse_doubles(o.open)};
  auto rates = find_garbage_rates(mi, kp, tuple);
  if (!rates) {
    nlohmann::json detail;
    detail["partition"] = mask_to_users(kp);
    throw Error(errc::infeasible, "no garbage rates satisfy the bounds", detail);
  }
  std::string s = "{\"partition\":";
  append_user_array(s, kp);
  s += ",\"vars\":[";
  const std::vector<int> users = mask_to_users(kp);
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (i) s += ',';
    s += '"' + garbage_variable_name(users[i]) + '"';
  }
  s += "],\"rates\":";
  append_double_array(s, *rates);
  s += '}';
  return s;
}

std::string run_fm_verify(const Options& o) {
  MICache mi = load_cache(o.input);
  std::uint32_t kp = parse_users(o.partition, mi.user_count());
  ProjectionReport rep = verify_fm_projection(mi, kp);
  std::string s = "{\"match\":";
  s += rep.match ? "true" : "false";
  s += ",\"direct\":" + region_to_json(rep.direct);
  s += ",\"projected\":" + polytope_to_json(rep.projected);
  s += '}';
  return s;
}

std::string run_max_secrecy(const Options& o) {
  MICache mi = load_cache(o.input);
  SumSecrecy ss = max_sum_secrecy(mi);
  std::string open = "null";
  try {
    open = format12(max_open_at_max_secrecy(mi));
  } catch (const Error& e) {
    if (e.code() != errc::zero_secrecy) throw;
  }
  std::string s = "{\"value\":" + format12(ss.value);
  s += ",\"partition\":";
  append_user_array(s, ss.argmax);
  s += ",\"open_sum\":" + open + "}";
  return s;
}

std::string run_compare_secrecy(const Options& o) {
  MICache mi = load_cache(o.input);
  SecrecyComparison c = compare_secrecy_regions(mi);
  std::string s = "{\"relation\":\"" + c.relation + "\"";
  s += ",\"condition\":";
  s += c.condition.empty() ? "null" : ('"' + c.condition + '"');
  s += ",\"match\":";
  s += c.match ? "true" : "false";
  s += ",\"sum_difference\":" + format12(c.sum_difference);
  s += ",\"single_differences\":";
  append_double_array(s, c.single_differences);
  s += ",\"witness\":";
  if (c.witness.empty()) {
    s += "null";
  } else {
    append_double_array(s, c.witness);
  }
  s += '}';
  return s;
}

std::string run_reduce_partition(const Options& o) {
  MICache mi = load_cache(o.input);
  std::uint32_t kp = parse_users(o.partition, mi.user_count());
  PartitionReduction r = reduce_partition(mi, kp);
  std::string s = "{\"removed\":";
  append_user_array(s, r.removed);
  s += ",\"remaining\":";
  append_user_array(s, r.remaining);
  s += '}';
  return s;
}

std::string run_bound_compare(const Options& o) {
  MICache mi = load_cache(o.input);
  BoundComparison b = bound_family_comparison(mi, o.user);
  std::string s = "{\"user\":" + std::to_string(b.user);
  s += ",\"extra_family_count\":" + std::to_string(b.extra_family_count);
  s += ",\"all_tighter\":";
  s += b.all_tighter ? "true" : "false";
  s += ",\"entries\":[";
  for (std::size_t i = 0; i < b.entries.size(); ++i) {
    const BoundComparisonEntry& e = b.entries[i];
    if (i) s += ',';
    s += "{\"S\":";
    append_user_array(s, e.S);
    s += ",\"Sp\":";
    append_user_array(s, e.Sp);
    s += ",\"member\":" + format12(e.rhs_member);
    s += ",\"nonmember\":" + format12(e.rhs_nonmember);
    s += ",\"tighter\":";
    s += e.tighter ? "true" : "false";
    s += '}';
  }
  s += "]}";
  return s;
}

std::string run_slice(const Options& o) {
  Polytope p = polytope_from_json(read_file(o.input));
  std::vector<std::string> axes = split(o.axes, ',');
  if (axes.size() != 2 || axes[0] == axes[1]) {
    throw Error("usage", "slice needs two distinct axis names", {{"axes", o.axes}});
  }
  for (const std::string& a : axes) {
    if (p.var_index(a) < 0) throw Error("usage", "unknown axis variable", {{"axis", a}});
  }

  std::vector<std::pair<int, double>> fixed;
  for (const std::string& f : o.fix) {
    std::size_t eq = f.find('=');
    if (eq == std::string::npos) {
      throw Error("usage", "fix entries take the form name=value", {{"fix", f}});
    }
    std::string name = f.substr(0, eq);
    int col = p.var_index(name);
    if (col < 0) throw Error("usage", "unknown variable", {{"variable", name}});
    if (name == axes[0] || name == axes[1]) {
      throw Error("usage", "cannot fix a slice axis", {{"variable", name}});
    }
    fixed.emplace_back(col, parse_double(f.substr(eq + 1)));
  }

  Polytope q = substitute_vars(p, fixed);
  std::vector<std::string> leftover;
  for (const std::string& name : q.vars) {
    if (name != axes[0] && name != axes[1]) leftover.push_back(name);
  }
  if (!leftover.empty()) q = fm_eliminate_all(std::move(q), leftover);
  q = remove_redundant(q);
  q = reorder_vars(q, axes);

  std::vector<Vertex> verts = vertices(q);
  if (verts.size() > 2) {
    double cx = 0.0, cy = 0.0;
    for (const Vertex& v : verts) {
      cx += v.coords[0];
      cy += v.coords[1];
    }
    cx /= static_cast<double>(verts.size());
    cy /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [&](const Vertex& a, const Vertex& b) {
      double aa = std::atan2(a.coords[1] - cy, a.coords[0] - cx);
      double ab = std::atan2(b.coords[1] - cy, b.coords[0] - cx);
      if (aa != ab) return aa < ab;
      return a.coords < b.coords;
    });
  }
  return vertices_to_csv(q, verts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete memoryless multiple-access wiretap channel regions"};
  app.require_subcommand(1);

  Options o;
  if (const char* env = std::getenv("MACWT_TOL")) {
    try {
      o.tol = parse_double(env);
    } catch (const Error&) {
      std::cerr << "{\"error\":\"usage\",\"detail\":{\"MACWT_TOL\":\"" << env
                << "\"}}\n";
      return 2;
    }
  }

  auto add_common = [&](CLI::App* sub, bool needs_input = true) {
    if (needs_input) sub->add_option("input", o.input, "input file")->required();
    sub->add_option("--out", o.out, "output path (default: stdout)");
    sub->add_option("--tol", o.tol, "membership tolerance");
    sub->add_option("--threads", o.threads, "reserved; accepted for compatibility");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a channel spec");
  add_common(validate);

  CLI::App* mi = app.add_subcommand("mi", "conditional mutual information");
  add_common(mi);
  mi->add_option("--left", o.left, "left variable set, e.g. 1,2")->required();
  mi->add_option("--right", o.right, "right variable set, e.g. y")->required();
  mi->add_option("--given", o.given, "conditioning set, may be empty");

  CLI::App* region = app.add_subcommand("region", "rate region for a partition");
  add_common(region);
  region->add_option("--partition", o.partition, "users with positive secrecy");
  region->add_flag("--unclamped", o.unclamped, "keep negative bounds");

  CLI::App* region_union = app.add_subcommand("region-union", "regions for all partitions");
  add_common(region_union);

  CLI::App* secrecy = app.add_subcommand("secrecy-region", "secret-rate-only region");
  add_common(secrecy);
  secrecy->add_option("--partition", o.partition, "users with positive secrecy");
  secrecy->add_flag("--legacy", o.legacy, "single full-set region with clamping");

  CLI::App* check = app.add_subcommand("check", "point membership in a region file");
  add_common(check);
  check->add_option("--point", o.point, "comma-separated coordinates")->required();

  CLI::App* garbage = app.add_subcommand("garbage", "garbage rates for a rate tuple");
  add_common(garbage);
  garbage->add_option("--partition", o.partition, "users with positive secrecy");
  garbage->add_option("--secret", o.secret, "secret rates, one per user");
  garbage->add_option("--open", o.open, "open rates, one per user");
  garbage->add_flag("--symbolic", o.symbolic, "emit the joint system instead");

  CLI::App* fm = app.add_subcommand("fm-verify", "projection equality check");
  add_common(fm);
  fm->add_option("--partition", o.partition, "users with positive secrecy");

  CLI::App* maxs = app.add_subcommand("max-secrecy", "maximum sum secrecy rate");
  add_common(maxs);

  CLI::App* cmp = app.add_subcommand("compare-secrecy", "legacy region vs union");
  add_common(cmp);

  CLI::App* reduce = app.add_subcommand("reduce-partition", "drop removable users");
  add_common(reduce);
  reduce->add_option("--partition", o.partition, "users with positive secrecy");

  CLI::App* slice = app.add_subcommand("slice", "2-D cross-section as CSV");
  add_common(slice);
  slice->add_option("--axes", o.axes, "two variable names, comma-separated")->required();
  slice->add_option("--fix", o.fix, "name=value for non-axis variables");

  CLI::App* bcmp = app.add_subcommand("bound-compare", "bound family with and without a user");
  add_common(bcmp);
  bcmp->add_option("--user", o.user, "1-based user index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::string out;
    if (validate->parsed()) out = run_validate(o);
    else if (mi->parsed()) out = run_mi(o);
    else if (region->parsed()) out = run_region(o);
    else if (region_union->parsed()) out = run_region_union(o);
    else if (secrecy->parsed()) out = run_secrecy_region(o);
    else if (check->parsed()) out = run_check(o);
    else if (garbage->parsed()) out = run_garbage(o);
    else if (fm->parsed()) out = run_fm_verify(o);
    else if (maxs->parsed()) out = run_max_secrecy(o);
    else if (cmp->parsed()) out = run_compare_secrecy(o);
    else if (reduce->parsed()) out = run_reduce_partition(o);
    else if (slice->parsed()) out = run_slice(o);
    else if (bcmp->parsed()) out = run_bound_compare(o);
    write_output(o.out, out);
  } catch (const Error& e) {
    nlohmann::json detail = e.detail();
    detail["message"] = e.what();
    nlohmann::json err{{"error", e.code()}, {"detail", detail}};
    std::cerr << err.dump() << '\n';
    return e.code() == "usage" ? 2 : 1;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "internal"}, {"detail", {{"message", e.what()}}}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return 0;
}

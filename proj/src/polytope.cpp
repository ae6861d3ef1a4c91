#include "macwt/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include <json.hpp>

#include "macwt/error.hpp"

namespace macwt {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kRedundancySlack = 1e-8;
constexpr double kVertexDedup = 1e-7;
constexpr double kRankTol = 1e-9;

std::string format12(double v) {
  if (v == 0.0) v = 0.0;  // canonicalize negative zero
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool all_zero(const std::vector<long long>& c) {
  for (long long v : c)
    if (v != 0) return false;
  return true;
}

// Maximize obj over the given rows with free variables, splitting x = u - w.
LPSolution maximize_free(const std::vector<const LinearInequality*>& rows,
                         const std::vector<double>& obj, int d) {
  LPProblem lp = LPProblem::with_vars(2 * d);
  for (int j = 0; j < d; ++j) {
    lp.objective[2 * j] = obj[j];
    lp.objective[2 * j + 1] = -obj[j];
  }
  lp.rows.reserve(rows.size());
  for (const LinearInequality* r : rows) {
    LPRow s;
    s.coeffs.assign(2 * d, 0.0);
    for (int j = 0; j < d; ++j) {
      const double c = static_cast<double>(r->coeffs[j]);
      s.coeffs[2 * j] = c;
      s.coeffs[2 * j + 1] = -c;
    }
    s.rhs = r->rhs;
    lp.rows.push_back(std::move(s));
  }
  LPSolution sol = solve(lp);
  if (sol.status == LPStatus::optimal) {
    std::vector<double> x(d);
    for (int j = 0; j < d; ++j) x[j] = sol.point[2 * j] - sol.point[2 * j + 1];
    sol.point = std::move(x);
  }
  return sol;
}

}  // namespace

int Polytope::var_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

void Polytope::normalize() {
  std::vector<LinearInequality> out;
  out.reserve(ineqs.size());
  std::map<std::vector<long long>, std::vector<std::size_t>> seen;
  for (auto& row : ineqs) {
    if (static_cast<int>(row.coeffs.size()) != dim())
      throw Error(errc::dimension, "inequality width does not match the variable order",
                  {{"vars", vars.size()}, {"coeffs", row.coeffs.size()}});
    if (all_zero(row.coeffs) && row.rhs >= 0.0) continue;
    auto& kept_idx = seen[row.coeffs];
    bool merged = false;
    for (std::size_t i : kept_idx) {
      if (std::fabs(out[i].rhs - row.rhs) < 1e-12) {
        out[i].rhs = std::min(out[i].rhs, row.rhs);
        merged = true;
        break;
      }
    }
    if (!merged) {
      kept_idx.push_back(out.size());
      out.push_back(std::move(row));
    }
  }
  ineqs = std::move(out);
}

double evaluate_row(const LinearInequality& row, const std::vector<double>& point) {
  double s = 0.0;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    s += static_cast<double>(row.coeffs[j]) * point[j];
  return s;
}

Polytope fm_eliminate(const Polytope& p, const std::string& var, FMStats* stats) {
  const int vi = p.var_index(var);
  if (vi < 0)
    throw Error(errc::dimension, "variable to eliminate is not in the polytope",
                {{"var", var}});
  const int d = p.dim();

  Polytope out;
  out.vars = p.vars;
  out.vars.erase(out.vars.begin() + vi);

  std::vector<int> uppers, lowers, carried;
  for (int i = 0; i < static_cast<int>(p.ineqs.size()); ++i) {
    const long long c = p.ineqs[i].coeffs[vi];
    (c > 0 ? uppers : c < 0 ? lowers : carried).push_back(i);
  }
  if (stats) {
    stats->upper = static_cast<int>(uppers.size());
    stats->lower = static_cast<int>(lowers.size());
    stats->pairings = static_cast<int>(uppers.size() * lowers.size());
    stats->carried = static_cast<int>(carried.size());
  }

  auto strip = [&](const LinearInequality& r) {
    LinearInequality s;
    s.coeffs.reserve(d - 1);
    for (int j = 0; j < d; ++j)
      if (j != vi) s.coeffs.push_back(r.coeffs[j]);
    s.rhs = r.rhs;
    return s;
  };

  out.ineqs.reserve(uppers.size() * lowers.size() + carried.size());
  for (int u : uppers) {
    const LinearInequality& U = p.ineqs[u];
    const long long a = U.coeffs[vi];
    for (int l : lowers) {
      const LinearInequality& L = p.ineqs[l];
      const long long b = -L.coeffs[vi];  // > 0
      LinearInequality row;
      row.coeffs.reserve(d - 1);
      long long g = 0;
      for (int j = 0; j < d; ++j) {
        if (j == vi) continue;
        const long long v = b * U.coeffs[j] + a * L.coeffs[j];
        row.coeffs.push_back(v);
        g = std::gcd(g, v < 0 ? -v : v);
      }
      row.rhs = static_cast<double>(b) * U.rhs + static_cast<double>(a) * L.rhs;
      if (g > 1) {
        for (auto& v : row.coeffs) v /= g;
        row.rhs /= static_cast<double>(g);
      }
      out.ineqs.push_back(std::move(row));
    }
  }
  for (int c : carried) out.ineqs.push_back(strip(p.ineqs[c]));
  return out;
}

Polytope fm_eliminate_all(Polytope p, const std::vector<std::string>& vars,
                          std::size_t reduce_threshold, std::size_t hard_cap) {
  for (const auto& name : vars) {
    const int vi = p.var_index(name);
    if (vi < 0)
      throw Error(errc::dimension, "variable to eliminate is not in the polytope",
                  {{"var", name}});
    std::size_t up = 0, lo = 0, car = 0;
    for (const auto& row : p.ineqs) {
      const long long c = row.coeffs[vi];
      ++(c > 0 ? up : c < 0 ? lo : car);
    }
    if (up * lo + car > hard_cap)
      throw Error(errc::resource, "elimination would exceed the inequality hard cap",
                  {{"var", name}, {"projected_count", up * lo + car}, {"cap", hard_cap}});
    p = fm_eliminate(p, name);
    if (p.ineqs.size() > reduce_threshold) p = remove_redundant(p);
  }
  return p;
}

Polytope remove_redundant(const Polytope& p) {
  Polytope q = p;
  q.normalize();
  const int d = q.dim();
  const std::size_t n = q.ineqs.size();
  if (d == 0 || n <= 1) return q;

  std::vector<char> active(n, 1);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<const LinearInequality*> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      if (i != r && active[i]) rows.push_back(&q.ineqs[i]);
    // Capping the candidate row one unit above its rhs keeps the certificate
    // LP bounded; a capped optimum above rhs still certifies non-redundancy.
    LinearInequality cap = q.ineqs[r];
    cap.rhs += 1.0;
    rows.push_back(&cap);

    std::vector<double> obj(d);
    for (int j = 0; j < d; ++j) obj[j] = static_cast<double>(q.ineqs[r].coeffs[j]);
    LPSolution sol = maximize_free(rows, obj, d);
    if (sol.status == LPStatus::infeasible ||
        (sol.status == LPStatus::optimal && sol.objective <= q.ineqs[r].rhs + kRedundancySlack))
      active[r] = 0;
  }

  Polytope out;
  out.vars = q.vars;
  for (std::size_t i = 0; i < n; ++i)
    if (active[i]) out.ineqs.push_back(std::move(q.ineqs[i]));
  return out;
}

LPSolution lp_over_polytope(const Polytope& p, const std::vector<double>& objective) {
  if (static_cast<int>(objective.size()) != p.dim())
    throw Error(errc::dimension, "objective length does not match the polytope",
                {{"vars", p.vars.size()}, {"objective", objective.size()}});
  std::vector<const LinearInequality*> rows;
  rows.reserve(p.ineqs.size());
  for (const auto& r : p.ineqs) rows.push_back(&r);
  return maximize_free(rows, objective, p.dim());
}

namespace {

// Incremental row elimination used by the vertex search: rows are reduced
// against the pivots chosen so far; a row that reduces to (numerical) zero is
// dependent and rejected.
struct BasisBuilder {
  int d;
  std::vector<std::vector<double>> elim;  // per depth: d coeffs + rhs
  std::vector<int> pivcol;

  explicit BasisBuilder(int dim) : d(dim), elim(dim, std::vector<double>(dim + 1)), pivcol(dim) {}

  bool try_add(const LinearInequality& row, int depth) {
    std::vector<double>& cur = elim[depth];
    for (int j = 0; j < d; ++j) cur[j] = static_cast<double>(row.coeffs[j]);
    cur[d] = row.rhs;
    for (int l = 0; l < depth; ++l) {
      const double f = cur[pivcol[l]];
      if (f != 0.0) {
        const std::vector<double>& e = elim[l];
        for (int j = 0; j <= d; ++j) cur[j] -= f * e[j];
      }
    }
    int pc = -1;
    double best = kRankTol;
    for (int j = 0; j < d; ++j)
      if (std::fabs(cur[j]) > best) {
        best = std::fabs(cur[j]);
        pc = j;
      }
    if (pc < 0) return false;
    const double inv = 1.0 / cur[pc];
    for (int j = 0; j <= d; ++j) cur[j] *= inv;
    cur[pc] = 1.0;
    pivcol[depth] = pc;
    return true;
  }

  void solve(std::vector<double>& x) const {
    x.assign(d, 0.0);
    for (int l = d - 1; l >= 0; --l) {
      double v = elim[l][d];
      for (int m = l + 1; m < d; ++m) v -= elim[l][pivcol[m]] * x[pivcol[m]];
      x[pivcol[l]] = v;
    }
  }
};

}  // namespace

std::vector<Vertex> vertices(const Polytope& p) {
  const int d = p.dim();
  if (d == 0) return {};

  // Coordinate LPs certify boundedness and detect emptiness before the
  // combinatorial search.
  for (int j = 0; j < d; ++j) {
    for (double sign : {1.0, -1.0}) {
      std::vector<double> obj(d, 0.0);
      obj[j] = sign;
      LPSolution sol = lp_over_polytope(p, obj);
      if (sol.status == LPStatus::unbounded)
        throw Error(errc::unbounded, "polytope is unbounded along a coordinate",
                    {{"var", p.vars[j]}, {"direction", sign > 0 ? "up" : "down"}});
      if (sol.status == LPStatus::infeasible) return {};
    }
  }

  Polytope reduced;
  const Polytope* work = &p;
  if (p.ineqs.size() > 32) {
    reduced = remove_redundant(p);
    work = &reduced;
  }
  const auto& rows = work->ineqs;
  const int R = static_cast<int>(rows.size());
  if (R < d) return {};

  std::vector<std::vector<double>> found;
  BasisBuilder basis(d);
  std::vector<double> x;
  std::vector<int> stack(d, 0);
  int depth = 0;
  stack[0] = 0;
  // Iterative DFS over increasing row indices choosing d independent rows.
  while (depth >= 0) {
    int& i = stack[depth];
    if (i > R - (d - depth)) {
      --depth;
      if (depth >= 0) ++stack[depth];
      continue;
    }
    if (!basis.try_add(rows[i], depth)) {
      ++i;
      continue;
    }
    if (depth + 1 == d) {
      basis.solve(x);
      bool ok = true;
      for (double v : x)
        if (!std::isfinite(v)) {
          ok = false;
          break;
        }
      if (ok) {
        for (const auto& row : p.ineqs)
          if (evaluate_row(row, x) > row.rhs + kFeasTol) {
            ok = false;
            break;
          }
      }
      if (ok) found.push_back(x);
      ++i;
    } else {
      ++depth;
      stack[depth] = i + 1;
    }
  }

  std::sort(found.begin(), found.end());
  std::vector<Vertex> out;
  for (const auto& cand : found) {
    bool dup = false;
    for (const auto& v : out) {
      double dist = 0.0;
      for (int j = 0; j < d; ++j) dist = std::max(dist, std::fabs(v.coords[j] - cand[j]));
      if (dist <= kVertexDedup) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    Vertex v;
    v.coords = cand;
    for (int i = 0; i < static_cast<int>(p.ineqs.size()); ++i) {
      const double slack = p.ineqs[i].rhs - evaluate_row(p.ineqs[i], cand);
      if (std::fabs(slack) <= 1e-7 * (1.0 + std::fabs(p.ineqs[i].rhs))) v.active.push_back(i);
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool contains(const Polytope& p, const std::vector<double>& point, double tol) {
  if (static_cast<int>(point.size()) != p.dim())
    throw Error(errc::dimension, "point dimension does not match the polytope",
                {{"vars", p.vars.size()}, {"point", point.size()}});
  for (const auto& row : p.ineqs)
    if (evaluate_row(row, point) > row.rhs + tol) return false;
  return true;
}

bool polytope_equal(const Polytope& a, const Polytope& b, double tol) {
  if (a.vars != b.vars)
    throw Error(errc::dimension, "polytopes must share one variable order");
  for (const auto& v : vertices(a))
    if (!contains(b, v.coords, tol)) return false;
  for (const auto& v : vertices(b))
    if (!contains(a, v.coords, tol)) return false;
  return true;
}

bool union_contains(const std::vector<Polytope>& members,
                    const std::vector<double>& point, double tol) {
  for (const auto& m : members)
    if (contains(m, point, tol)) return true;
  return false;
}

InclusionReport union_included(const std::vector<Polytope>& a,
                               const std::vector<Polytope>& b,
                               int boundary_samples, std::uint64_t seed, double tol) {
  for (std::size_t mi = 0; mi < a.size(); ++mi) {
    const Polytope& member = a[mi];
    const int d = member.dim();
    const auto verts = vertices(member);
    for (const auto& v : verts)
      if (!union_contains(b, v.coords, tol)) return {false, v.coords};
    if (verts.empty()) continue;

    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (mi + 1));
    std::exponential_distribution<double> expd(1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < boundary_samples; ++s) {
      std::vector<double> x(d, 0.0);
      double wsum = 0.0;
      for (const auto& v : verts) {
        const double w = expd(rng);
        wsum += w;
        for (int j = 0; j < d; ++j) x[j] += w * v.coords[j];
      }
      for (double& c : x) c /= wsum;

      std::vector<double> dir(d);
      for (double& c : dir) c = gauss(rng);

      double tstar = std::numeric_limits<double>::infinity();
      for (const auto& row : member.ineqs) {
        double den = 0.0;
        for (int j = 0; j < d; ++j) den += static_cast<double>(row.coeffs[j]) * dir[j];
        if (den > 1e-12) tstar = std::min(tstar, (row.rhs - evaluate_row(row, x)) / den);
      }
      if (!std::isfinite(tstar)) continue;
      if (tstar < 0.0) tstar = 0.0;
      for (int j = 0; j < d; ++j) x[j] += tstar * dir[j];
      if (!union_contains(b, x, tol)) return {false, x};
    }
  }
  return {true, {}};
}

Polytope with_box(const Polytope& p, double hi) {
  Polytope out = p;
  for (int j = 0; j < p.dim(); ++j) {
    LinearInequality lo_row, hi_row;
    lo_row.coeffs.assign(p.dim(), 0);
    lo_row.coeffs[j] = -1;
    lo_row.rhs = 0.0;
    hi_row.coeffs.assign(p.dim(), 0);
    hi_row.coeffs[j] = 1;
    hi_row.rhs = hi;
    out.ineqs.push_back(std::move(lo_row));
    out.ineqs.push_back(std::move(hi_row));
  }
  out.normalize();
  return out;
}

std::string polytope_to_json(const Polytope& p) {
  std::string out = "{\"vars\":[";
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    if (i) out += ',';
    out += '"';
    out += p.vars[i];
    out += '"';
  }
  out += "],\"ineqs\":[";
  for (std::size_t i = 0; i < p.ineqs.size(); ++i) {
    if (i) out += ',';
    out += "{\"coeffs\":[";
    for (std::size_t j = 0; j < p.ineqs[i].coeffs.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(p.ineqs[i].coeffs[j]);
    }
    out += "],\"rhs\":";
    out += format12(p.ineqs[i].rhs);
    out += '}';
  }
  out += "]}";
  return out;
}

Polytope polytope_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::schema, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vars") || !doc.contains("ineqs"))
    throw Error(errc::schema, "polytope document needs \"vars\" and \"ineqs\"");
  Polytope p;
  for (const auto& v : doc["vars"]) {
    if (!v.is_string()) throw Error(errc::schema, "variable names must be strings");
    p.vars.push_back(v.get<std::string>());
  }
  for (const auto& q : doc["ineqs"]) {
    if (!q.is_object() || !q.contains("coeffs") || !q.contains("rhs"))
      throw Error(errc::schema, "each inequality needs \"coeffs\" and \"rhs\"");
    LinearInequality row;
    for (const auto& c : q["coeffs"]) {
      if (c.is_number_integer()) {
        row.coeffs.push_back(c.get<long long>());
      } else if (c.is_number()) {
        const double v = c.get<double>();
        if (v != std::floor(v))
          throw Error(errc::schema, "inequality coefficients must be integers");
        row.coeffs.push_back(static_cast<long long>(v));
      } else {
        throw Error(errc::schema, "inequality coefficients must be integers");
      }
    }
    if (!q["rhs"].is_number()) throw Error(errc::schema, "\"rhs\" must be a number");
    row.rhs = q["rhs"].get<double>();
    if (row.coeffs.size() != p.vars.size())
      throw Error(errc::dimension, "inequality width does not match the variable order",
                  {{"vars", p.vars.size()}, {"coeffs", row.coeffs.size()}});
    p.ineqs.push_back(std::move(row));
  }
  return p;
}

std::string vertices_to_csv(const Polytope& p, const std::vector<Vertex>& verts) {
  std::string out;
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    if (i) out += ',';
    out += p.vars[i];
  }
  out += '\n';
  for (const auto& v : verts) {
    for (std::size_t j = 0; j < v.coords.size(); ++j) {
      if (j) out += ',';
      out += format12(v.coords[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace macwt

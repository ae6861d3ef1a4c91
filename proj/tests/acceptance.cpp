// Acceptance gate: drives every module end to end and prints one verdict line
// per numbered criterion.  Exits nonzero when any line fails.  All randomness
// is seeded, so a failure reproduces deterministically.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "macwt/channel.hpp"
#include "macwt/error.hpp"
#include "macwt/infomeasures.hpp"
#include "macwt/polytope.hpp"
#include "macwt/regions.hpp"
#include "macwt/simplex.hpp"

#include "fuzz.hpp"
#include "oracles.hpp"

using namespace macwt;
using Clock = std::chrono::steady_clock;

namespace {

struct Failure {
  std::string msg;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Failure{msg};
}

std::string fmt(const char* pattern, ...) {
  va_list ap;
  va_start(ap, pattern);
  char buf[512];
  std::vsnprintf(buf, sizeof(buf), pattern, ap);
  va_end(ap);
  return buf;
}

int g_failures = 0;

template <typename Body>
void criterion(int num, double budget_s, Body body) {
  auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  try {
    detail = body();
  } catch (const Failure& f) {
    ok = false;
    detail = f.msg;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("unexpected exception: ") + e.what();
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  if (ok && budget_s > 0.0 && dt > budget_s) {
    ok = false;
    detail = fmt("runtime %.2f s exceeds the %.0f s budget", dt, budget_s);
  }
  std::printf("criterion %2d: %s (%6.2f s) %s\n", num, ok ? "PASS" : "FAIL", dt,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double row_value(const LinearInequality& row, const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    s += static_cast<double>(row.coeffs[j]) * x[j];
  return s;
}

double sum_slot(const std::vector<double>& coords, int users, int slot) {
  double s = 0.0;
  for (int k = 0; k < users; ++k) s += coords[2 * k + slot];
  return s;
}

RateTuple tuple_from(const std::vector<double>& coords, int users) {
  RateTuple t;
  for (int k = 0; k < users; ++k) {
    t.secret.push_back(coords[2 * k]);
    t.open.push_back(coords[2 * k + 1]);
  }
  return t;
}

// Redundancy removal keeps basis enumeration cheap; the box guards against
// coordinates the family leaves unconstrained.
std::vector<Vertex> region_vertices(const Polytope& poly, double box_hi) {
  return vertices(with_box(remove_redundant(poly), box_hi));
}

// Uniform binary inputs; Y = (X1 xor noise(flip), X2); Z = X1 exactly.
// User 1 has nothing to hide from this eavesdropper, user 2 does.
ChannelSpec asymmetric_eve(double flip) {
  ChannelSpec s;
  s.user_alphabets = {2, 2};
  s.y_alphabet = 4;
  s.z_alphabet = 2;
  s.input_pmfs = {{0.5, 0.5}, {0.5, 0.5}};
  s.transition.assign(2 * 2 * 4 * 2, 0.0);
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      std::size_t c = static_cast<std::size_t>(x1) * 2 + x2;
      for (int n = 0; n < 2; ++n) {
        int y = 2 * (x1 ^ n) + x2;
        s.transition[(c * 4 + y) * 2 + x1] += n ? flip : 1.0 - flip;
      }
    }
  }
  return s;
}

// Three-user variant: Y = (X1 xor noise(flip), X2, X3); Z = X1 exactly.
ChannelSpec asymmetric_eve3(double flip) {
  ChannelSpec s;
  s.user_alphabets = {2, 2, 2};
  s.y_alphabet = 8;
  s.z_alphabet = 2;
  s.input_pmfs = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
  s.transition.assign(8 * 8 * 2, 0.0);
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      for (int x3 = 0; x3 < 2; ++x3) {
        std::size_t c = static_cast<std::size_t>(x1) * 4 + x2 * 2 + x3;
        for (int n = 0; n < 2; ++n) {
          int y = 4 * (x1 ^ n) + 2 * x2 + x3;
          s.transition[(c * 8 + y) * 2 + x1] += n ? flip : 1.0 - flip;
        }
      }
    }
  }
  return s;
}

// Uniform binary inputs; Y = X1 xor X2; Z = (X1 xor n1, X2 xor n2) with
// independent flips.  Joint secrecy falls below either single user's.
ChannelSpec xor_channel(double flip) {
  ChannelSpec s;
  s.user_alphabets = {2, 2};
  s.y_alphabet = 2;
  s.z_alphabet = 4;
  s.input_pmfs = {{0.5, 0.5}, {0.5, 0.5}};
  s.transition.assign(2 * 2 * 2 * 4, 0.0);
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int x2 = 0; x2 < 2; ++x2) {
      std::size_t c = static_cast<std::size_t>(x1) * 2 + x2;
      int y = x1 ^ x2;
      for (int n1 = 0; n1 < 2; ++n1) {
        for (int n2 = 0; n2 < 2; ++n2) {
          int z = 2 * (x1 ^ n1) + (x2 ^ n2);
          double p = (n1 ? flip : 1.0 - flip) * (n2 ? flip : 1.0 - flip);
          s.transition[(c * 2 + y) * 4 + z] += p;
        }
      }
    }
  }
  return s;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/macwt_acceptance_" + name;
  std::ofstream f(path, std::ios::trunc);
  f << text;
  require(f.good(), "cannot write " + path);
  return path;
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(MACWT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  require(pipe != nullptr, "popen failed for: " + cmd);
  std::string out;
  char buf[1024];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int rc = pclose(pipe);
  require(WIFEXITED(rc) && WEXITSTATUS(rc) == 0, "nonzero exit from: " + cmd);
  return out;
}

// Per-axis maximum over the data rows of a two-column CSV; nullopt when the
// cross-section is empty.
std::optional<std::array<double, 2>> csv_axis_maxima(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::array<double, 2> best{0.0, 0.0};
  bool any = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double a = 0.0, b = 0.0;
    require(std::sscanf(line.c_str(), "%lf,%lf", &a, &b) == 2, "bad CSV row: " + line);
    if (!any) {
      best = {a, b};
      any = true;
    } else {
      best[0] = std::max(best[0], a);
      best[1] = std::max(best[1], b);
    }
  }
  if (!any) return std::nullopt;
  return best;
}

std::vector<ChannelSpec> make_corpus(int K, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ChannelSpec> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(fuzz::random_channel(rng, K));
  return out;
}

}  // namespace

int main() {
  // Shared unrestricted corpus: 20 one-user, 60 two-user, 40 three-user
  // channels with alphabets up to 3.
  const std::vector<ChannelSpec> corpus1 = make_corpus(1, 20, 401);
  const std::vector<ChannelSpec> corpus2 = make_corpus(2, 60, 402);
  const std::vector<ChannelSpec> corpus3 = make_corpus(3, 40, 403);
  const std::vector<const std::vector<ChannelSpec>*> corpora = {&corpus1, &corpus2,
                                                                &corpus3};

  // 1. Elimination bookkeeping on the three-user garbage system: the bound and
  // pairing counts at each stage are fixed by the system's shape, with one
  // redundancy sweep before the final stage.
  criterion(1, 5.0, [] {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
      std::mt19937_64 rng(seed);
      ChannelSpec ch = fuzz::degraded_channel(rng, 3);
      MICache mi(joint_distribution(ch));
      GarbagePolytope sys = build_garbage_polytope(mi, 0b111);
      require(sys.poly.ineqs.size() == 17,
              fmt("seed %llu: expected 17 starting rows, got %zu",
                  static_cast<unsigned long long>(seed), sys.poly.ineqs.size()));
      FMStats s1;
      Polytope p1 = fm_eliminate(sys.poly, garbage_variable_name(1), &s1);
      require(s1.upper == 4 && s1.lower == 5 && s1.pairings == 20,
              fmt("stage 1: %d upper / %d lower / %d pairings, wanted 4/5/20", s1.upper,
                  s1.lower, s1.pairings));
      require(p1.ineqs.size() == 28,
              fmt("stage 1: %zu rows carried forward, wanted 28", p1.ineqs.size()));
      FMStats s2;
      Polytope p2 = fm_eliminate(p1, garbage_variable_name(2), &s2);
      require(s2.upper == 8 && s2.lower == 7 && s2.pairings == 56,
              fmt("stage 2: %d upper / %d lower / %d pairings, wanted 8/7/56", s2.upper,
                  s2.lower, s2.pairings));
      require(p2.ineqs.size() == 69,
              fmt("stage 2: %zu rows carried forward, wanted 69", p2.ineqs.size()));
      Polytope reduced = remove_redundant(p2);
      require(reduced.ineqs.size() == 29,
              fmt("reduction: %zu rows survive, wanted 29", reduced.ineqs.size()));
      FMStats s3;
      fm_eliminate(reduced, garbage_variable_name(3), &s3);
      require(s3.upper == 9 && s3.lower == 7 && s3.pairings == 63,
              fmt("stage 3: %d upper / %d lower / %d pairings, wanted 9/7/63", s3.upper,
                  s3.lower, s3.pairings));
    }
    return std::string(
        "3 seeded channels: stages give 4/5 bounds with 20 pairings, 8/7 with 56, "
        "then 9/7 with 63 after one reduction");
  });

  // 2. Eliminating the garbage variables reproduces the direct rate region on
  // channels where every receiver bound dominates the eavesdropper bound.
  criterion(2, 60.0, [] {
    int checked = 0;
    for (int K = 1; K <= 3; ++K) {
      std::mt19937_64 rng(100 + K);
      for (int i = 0; i < 100; ++i) {
        ChannelSpec ch = fuzz::degraded_channel(rng, K);
        MICache mi(joint_distribution(ch));
        std::uint32_t kp = static_cast<std::uint32_t>(i % (1 << K));
        require(!find_hypothesis_violation(mi, kp),
                fmt("K=%d i=%d: degraded channel unexpectedly violates the hypothesis",
                    K, i));
        ProjectionReport rep = verify_fm_projection(mi, kp);
        require(rep.match,
                fmt("K=%d i=%d partition %u: projection differs from the direct region",
                    K, i, kp));
        ++checked;
      }
    }
    return fmt("%d channels across 1..3 users: eliminated system equals the direct "
               "region every time",
               checked);
  });

  // 3. Garbage-rate feasibility: points just inside the region always admit
  // garbage rates satisfying the joint system; points pushed far outside never
  // do.
  criterion(3, 60.0, [] {
    const int quota = 1000;
    std::vector<std::vector<ChannelSpec>> chans(4);
    for (int K = 1; K <= 3; ++K) {
      std::mt19937_64 rng(100 + K);
      for (int i = 0; i < 100; ++i) chans[K].push_back(fuzz::degraded_channel(rng, K));
    }
    int interior = 0, exterior = 0;
    std::size_t coord_cycle = 0;
    for (int i = 0; i < 100 && (interior < quota || exterior < quota); ++i) {
      for (int K = 1; K <= 3; ++K) {
        const ChannelSpec& ch = chans[K][i];
        std::uint32_t kp = static_cast<std::uint32_t>(i % (1 << K));
        MICache mi(joint_distribution(ch));
        double M = mac_sum_rate(mi);
        RegionDescriptor r = build_region(mi, kp, false);
        auto vs = region_vertices(r.poly, M + 1.0);
        require(!vs.empty(), fmt("K=%d i=%d: region without vertices", K, i));
        std::vector<double> centroid(vs[0].coords.size(), 0.0);
        for (const Vertex& v : vs)
          for (std::size_t j = 0; j < centroid.size(); ++j) centroid[j] += v.coords[j];
        for (double& c : centroid) c /= static_cast<double>(vs.size());
        // Up to four spread-out vertices per channel keeps the corpus coverage
        // broad while still hitting the quota.
        std::size_t take = std::min<std::size_t>(4, vs.size());
        for (std::size_t pickv = 0; pickv < take; ++pickv) {
          const Vertex& v = vs[pickv * vs.size() / take];
          if (interior < quota) {
            std::vector<double> pt = v.coords;
            for (std::size_t j = 0; j < pt.size(); ++j)
              pt[j] += 1e-4 * (centroid[j] - pt[j]);
            RateTuple t = tuple_from(pt, K);
            auto g = find_garbage_rates(mi, kp, t);
            require(g.has_value(),
                    fmt("K=%d i=%d: no garbage rates for a shrunk vertex", K, i));
            GarbagePolytope fixed = build_garbage_polytope(mi, kp, &t);
            require(contains(fixed.poly, *g, 1e-9),
                    fmt("K=%d i=%d: returned garbage rates violate the system", K, i));
            ++interior;
          }
          if (exterior < quota) {
            std::vector<double> pt = v.coords;
            pt[coord_cycle++ % pt.size()] += M + 1.0;
            require(!contains(r.poly, pt, 1e-9),
                    fmt("K=%d i=%d: bumped point stayed inside the region", K, i));
            require(!find_garbage_rates(mi, kp, tuple_from(pt, K)).has_value(),
                    fmt("K=%d i=%d: garbage rates exist outside the region", K, i));
            ++exterior;
          }
        }
      }
    }
    require(interior >= quota && exterior >= quota,
            fmt("only %d interior / %d exterior points generated", interior, exterior));
    return fmt("%d interior points feasible with verified garbage rates; %d exterior "
               "points infeasible",
               interior, exterior);
  });

  // 4. The union over partitions contains every vertex of the single
  // clamped-family region, and a constructed channel shows the empty partition
  // reaching strictly beyond it.
  criterion(4, 0.0, [&] {
    int channels = 0, checked_vertices = 0;
    for (const auto* corpus : corpora) {
      for (const ChannelSpec& ch : *corpus) {
        MICache mi(joint_distribution(ch));
        int K = mi.user_count();
        double M = mac_sum_rate(mi) + 1.0;
        std::vector<Polytope> members;
        for (std::uint32_t kp = 0; kp < (1u << K); ++kp)
          members.push_back(build_region(mi, kp, true).poly);
        RegionDescriptor legacy = build_legacy_region(mi);
        for (const Vertex& v : region_vertices(legacy.poly, M)) {
          require(union_contains(members, v.coords, 1e-9),
                  fmt("K=%d channel %d: a clamped-family vertex escapes the union", K,
                      channels));
          ++checked_vertices;
        }
        ++channels;
      }
    }
    MICache mi(joint_distribution(asymmetric_eve(0.11)));
    RegionDescriptor open_only = build_region(mi, 0, true);
    RegionDescriptor legacy = build_legacy_region(mi);
    double margin = 0.0;
    for (const Vertex& v : region_vertices(open_only.poly, mac_sum_rate(mi) + 1.0)) {
      for (const LinearInequality& row : legacy.poly.ineqs)
        margin = std::max(margin, row_value(row, v.coords) - row.rhs);
    }
    require(margin >= 1e-3,
            fmt("constructed channel: largest excursion %.3g below 1e-3", margin));
    return fmt("%d vertices inside the union on %d channels; constructed channel "
               "exceeds the single region by %.3f bits",
               checked_vertices, channels, margin);
  });

  // 5. With nobody allowed secrecy the region degenerates to the standard
  // multiple-access family over the open rates.
  criterion(5, 0.0, [&] {
    int checked = 0;
    for (const auto* corpus : corpora) {
      for (const ChannelSpec& ch : *corpus) {
        MICache mi(joint_distribution(ch));
        int K = mi.user_count();
        Polytope mac;
        mac.vars = rate_variable_names(K);
        for (std::uint32_t T = 1; T < (1u << K); ++T) {
          LinearInequality row{std::vector<long long>(2 * K, 0),
                               bound_to_receiver(mi, 0, 0, T)};
          for (int k = 1; k <= K; ++k)
            if (T >> (k - 1) & 1u) row.coeffs[2 * (k - 1) + 1] = 1;
          mac.ineqs.push_back(row);
        }
        for (int k = 0; k < K; ++k) {
          std::vector<long long> up(2 * K, 0), down(2 * K, 0);
          up[2 * k] = 1;
          down[2 * k] = -1;
          mac.ineqs.push_back({up, 0.0});
          mac.ineqs.push_back({down, 0.0});
        }
        for (int j = 0; j < 2 * K; ++j) {
          std::vector<long long> c(2 * K, 0);
          c[j] = -1;
          mac.ineqs.push_back({c, 0.0});
        }
        mac.normalize();
        require(polytope_equal(build_region(mi, 0, true).poly, mac),
                fmt("K=%d channel %d: empty-partition region differs from the "
                    "multiple-access family",
                    K, checked));
        ++checked;
      }
    }
    return fmt("%d channels: empty-partition region equals the multiple-access family",
               checked);
  });

  // 6. Closed forms: the best secrecy sum over all member vertices, and the
  // best open sum on that secrecy face, match the direct formulas.
  criterion(6, 0.0, [] {
    int channels = 0, positive = 0;
    for (int K : {2, 3}) {
      std::mt19937_64 rng(600 + K);
      for (int i = 0; i < 50; ++i) {
        ChannelSpec ch = fuzz::random_channel(rng, K);
        MICache mi(joint_distribution(ch));
        double M = mac_sum_rate(mi) + 1.0;
        SumSecrecy best = max_sum_secrecy(mi);
        auto kps = submasks_ascending((1u << K) - 1);
        double vertex_best = 0.0;
        for (std::uint32_t kp : kps) {
          RegionDescriptor r = build_region(mi, kp, true);
          for (const Vertex& v : region_vertices(r.poly, M))
            vertex_best = std::max(vertex_best, sum_slot(v.coords, K, 0));
        }
        require(std::fabs(vertex_best - best.value) <= 1e-6,
                fmt("K=%d i=%d: vertex optimum %.12g vs closed form %.12g", K, i,
                    vertex_best, best.value));
        if (best.value > 0.0) {
          ++positive;
          double open_best = -1.0;
          bool any = false;
          for (std::uint32_t kp : kps) {
            Polytope q = build_region(mi, kp, true).poly;
            std::vector<long long> up(2 * K, 0), down(2 * K, 0);
            for (int k = 0; k < K; ++k) {
              up[2 * k] = 1;
              down[2 * k] = -1;
            }
            q.ineqs.push_back({up, best.value});
            q.ineqs.push_back({down, -best.value});
            std::vector<double> obj(2 * K, 0.0);
            for (int k = 0; k < K; ++k) obj[2 * k + 1] = 1.0;
            LPSolution sol = lp_over_polytope(q, obj);
            if (sol.status == LPStatus::optimal) {
              any = true;
              open_best = std::max(open_best, sol.objective);
            }
          }
          double closed = max_open_at_max_secrecy(mi);
          require(any, fmt("K=%d i=%d: no member reaches the secrecy optimum", K, i));
          require(std::fabs(open_best - closed) <= 1e-6,
                  fmt("K=%d i=%d: face optimum %.12g vs closed form %.12g", K, i,
                      open_best, closed));
        }
        ++channels;
      }
    }
    return fmt("%d channels: secrecy sums match everywhere; %d with positive secrecy "
               "also match the open-rate form",
               channels, positive);
  });

  // 7. Two-user dichotomy: when the joint bound dominates both singles the
  // union adds nothing; when it falls below both, the union is strictly
  // larger with a concrete witness.  Slices exported through the CLI carry
  // the same intercepts as the bound differences.
  criterion(7, 0.0, [] {
    std::mt19937_64 rng(700);
    std::optional<ChannelSpec> equal_fx;
    int draws = 0;
    for (int t = 0; t < 20000 && !equal_fx; ++t) {
      ChannelSpec c = fuzz::random_channel(rng, 2);
      MICache mi(joint_distribution(c));
      double l1 = region_rhs(mi, 3, 1, 1, 0).unclamped;
      double l2 = region_rhs(mi, 3, 2, 2, 0).unclamped;
      double l12 = region_rhs(mi, 3, 3, 3, 0).unclamped;
      double m1 = region_rhs(mi, 1, 1, 1, 0).unclamped;
      double m2 = region_rhs(mi, 2, 2, 2, 0).unclamped;
      if (l1 > 1e-3 && l2 > 1e-3 && m1 > 1e-3 && m2 > 1e-3 &&
          l12 >= std::max(l1, l2) + 1e-3) {
        equal_fx = std::move(c);
        draws = t + 1;
      }
    }
    require(equal_fx.has_value(), "no dominating-sum fixture found in 20000 draws");
    MICache emi(joint_distribution(*equal_fx));
    SecrecyComparison ec = compare_secrecy_regions(emi);
    require(ec.condition == "above_max",
            "dominating fixture classified as " + ec.condition);
    require(ec.relation == "equal" && ec.match,
            fmt("dominating fixture: relation %s, match %d", ec.relation.c_str(),
                static_cast<int>(ec.match)));

    ChannelSpec strict_spec = xor_channel(0.2);
    MICache smi(joint_distribution(strict_spec));
    SecrecyComparison sc = compare_secrecy_regions(smi);
    require(sc.condition == "below_min", "strict fixture classified as " + sc.condition);
    require(sc.relation == "strict_inclusion" && sc.match,
            fmt("strict fixture: relation %s, match %d", sc.relation.c_str(),
                static_cast<int>(sc.match)));
    require(sc.witness.size() == 2, "strict fixture: witness missing");
    std::vector<Polytope> members;
    for (std::uint32_t kp = 1; kp <= 3; ++kp)
      members.push_back(build_secrecy_region(smi, kp, false).poly);
    require(union_contains(members, sc.witness, 1e-9),
            "witness is not achievable by any member");
    Polytope legacy_secrecy = build_secrecy_region(smi, 3, true).poly;
    double excess = 0.0;
    for (const LinearInequality& row : legacy_secrecy.ineqs)
      excess = std::max(excess, row_value(row, sc.witness) - row.rhs);
    require(excess > 1e-9, "witness does not separate the regions");

    // Slice intercepts, exported end to end through the CLI.
    int intercepts = 0;
    const std::array<const ChannelSpec*, 2> fixtures = {&*equal_fx, &strict_spec};
    for (int which = 0; which < 2; ++which) {
      const ChannelSpec& fx = *fixtures[which];
      MICache mi(joint_distribution(fx));
      std::string chp = write_temp(fmt("ch%d.json", which), render_channel(fx));
      double c1 = region_rhs(mi, 3, 1, 1, 0).clamped;
      double c2 = region_rhs(mi, 3, 2, 2, 0).clamped;
      double c12 = region_rhs(mi, 3, 3, 3, 0).clamped;
      const std::array<const char*, 4> part = {"1", "2", "1,2", "1,2 --legacy"};
      std::array<std::array<double, 2>, 4> want;
      want[0] = {std::max(0.0, region_rhs(mi, 1, 1, 1, 0).unclamped), 0.0};
      want[1] = {0.0, std::max(0.0, region_rhs(mi, 2, 2, 2, 0).unclamped)};
      want[2] = {std::max(0.0, std::min(region_rhs(mi, 3, 1, 1, 0).unclamped, c12)),
                 std::max(0.0, std::min(region_rhs(mi, 3, 2, 2, 0).unclamped, c12))};
      want[3] = {std::min(c1, c12), std::min(c2, c12)};
      for (int piece = 0; piece < 4; ++piece) {
        std::string regp = fmt("/tmp/macwt_acceptance_reg%d%d.json", which, piece);
        run_cli("secrecy-region " + chp + " --partition " + part[piece] + " --out " +
                regp);
        std::string csv = run_cli("slice " + regp + " --axes R1_s,R2_s");
        auto got = csv_axis_maxima(csv);
        require(got.has_value(), fmt("fixture %d piece %d: empty slice", which, piece));
        require(std::fabs((*got)[0] - want[piece][0]) <= 1e-6 &&
                    std::fabs((*got)[1] - want[piece][1]) <= 1e-6,
                fmt("fixture %d piece %d: intercepts (%.9g, %.9g) vs (%.9g, %.9g)",
                    which, piece, (*got)[0], (*got)[1], want[piece][0],
                    want[piece][1]));
        intercepts += 2;
      }
    }
    return fmt("equality fixture after %d draws; strict witness separates the regions; "
               "%d exported intercepts within 1e-6",
               draws, intercepts);
  });

  // 8. Dropping the one subset that breaks the projection hypothesis keeps
  // every sampled point of the original region inside the reduced one.
  criterion(8, 0.0, [] {
    struct Fixture {
      ChannelSpec ch;
      std::uint32_t kp;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({asymmetric_eve(0.11), 0b11});
    fixtures.push_back({asymmetric_eve3(0.11), 0b111});
    std::mt19937_64 rng(800);
    std::exponential_distribution<double> draw(1.0);
    int sampled = 0;
    for (std::size_t f = 0; f < fixtures.size(); ++f) {
      MICache mi(joint_distribution(fixtures[f].ch));
      std::uint32_t kp = fixtures[f].kp;
      int violations = 0;
      std::uint32_t violator = 0;
      for (std::uint32_t S : submasks_ascending(kp)) {
        if (!S) continue;
        double diff =
            bound_to_receiver(mi, kp, S, 0) - bound_to_eavesdropper(mi, kp, S);
        if (diff < -1e-9) {
          ++violations;
          violator = S;
        }
      }
      require(violations == 1 && violator == 0b1,
              fmt("fixture %zu: %d violating subsets", f, violations));
      PartitionReduction red = reduce_partition(mi, kp);
      require(red.removed == violator && red.remaining == (kp ^ violator),
              fmt("fixture %zu: reduction removed mask %u", f, red.removed));
      Polytope target = build_region(mi, red.remaining, true).poly;
      RegionDescriptor src = build_region(mi, kp, true);
      auto vs = region_vertices(src.poly, mac_sum_rate(mi) + 1.0);
      require(!vs.empty(), fmt("fixture %zu: source region has no vertices", f));
      for (int t = 0; t < 250; ++t) {
        std::vector<double> w(vs.size());
        double total = 0.0;
        for (double& x : w) {
          x = draw(rng);
          total += x;
        }
        std::vector<double> pt(vs[0].coords.size(), 0.0);
        for (std::size_t i = 0; i < vs.size(); ++i)
          for (std::size_t j = 0; j < pt.size(); ++j)
            pt[j] += w[i] / total * vs[i].coords[j];
        require(contains(target, pt, 1e-9),
                fmt("fixture %zu: sampled point left the reduced region", f));
        ++sampled;
      }
    }
    return fmt("2 fixtures with one violating subset each; %d sampled tuples stay "
               "inside the reduced-partition region",
               sampled);
  });

  // 9. Simplex against exhaustive basis enumeration on boxed random programs.
  criterion(9, 0.0, [] {
    std::mt19937_64 rng(900);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_real_distribution<double> rhs_draw(-2.0, 4.0);
    std::uniform_real_distribution<double> obj_draw(-2.0, 2.0);
    int optimal = 0, infeasible = 0;
    for (int t = 0; t < 500; ++t) {
      int n = 1 + t % 6;
      int m = 1 + static_cast<int>(rng() % 5);
      std::vector<LPRow> rows;
      for (int r = 0; r < m; ++r) {
        LPRow row;
        row.coeffs.resize(n);
        for (double& c : row.coeffs) c = coeff(rng);
        row.rhs = rhs_draw(rng);
        rows.push_back(row);
      }
      for (int j = 0; j < n; ++j) {  // box keeps the oracle's vertex set finite
        LPRow row;
        row.coeffs.assign(n, 0.0);
        row.coeffs[j] = 1.0;
        row.rhs = 5.0;
        rows.push_back(row);
      }
      std::vector<double> obj(n);
      for (double& c : obj) c = obj_draw(rng);
      LPProblem lp = LPProblem::with_vars(n);
      lp.objective = obj;
      lp.rows = rows;
      LPSolution sol = solve(lp);
      std::vector<std::vector<double>> oracle_rows;
      std::vector<double> oracle_rhs;
      for (const LPRow& row : rows) {
        oracle_rows.push_back(row.coeffs);
        oracle_rhs.push_back(row.rhs);
      }
      for (int j = 0; j < n; ++j) {  // default lower bounds, spelled as rows
        std::vector<double> c(n, 0.0);
        c[j] = -1.0;
        oracle_rows.push_back(c);
        oracle_rhs.push_back(0.0);
      }
      oracle::LPOracle ref = oracle::lp_by_vertices(n, oracle_rows, oracle_rhs, obj);
      if (sol.status == LPStatus::optimal) {
        ++optimal;
        require(ref.feasible, fmt("lp %d: solver optimal, oracle infeasible", t));
        require(std::fabs(sol.objective - ref.value) <= 1e-8,
                fmt("lp %d: optimum %.12g vs oracle %.12g", t, sol.objective,
                    ref.value));
        double recomputed = 0.0;
        for (int j = 0; j < n; ++j) {
          require(sol.point[j] >= -1e-9 && sol.point[j] <= 5.0 + 1e-9,
                  fmt("lp %d: certificate outside the box", t));
          recomputed += obj[j] * sol.point[j];
        }
        for (const LPRow& row : rows) {
          double lhs = 0.0;
          for (int j = 0; j < n; ++j) lhs += row.coeffs[j] * sol.point[j];
          require(lhs <= row.rhs + 1e-9, fmt("lp %d: certificate violates a row", t));
        }
        require(std::fabs(recomputed - sol.objective) <= 1e-9,
                fmt("lp %d: reported objective drifts from its certificate", t));
      } else if (sol.status == LPStatus::infeasible) {
        ++infeasible;
        require(!ref.feasible, fmt("lp %d: solver infeasible, oracle found %.12g", t,
                                   ref.value));
      } else {
        require(false, fmt("lp %d: unbounded status on a boxed program", t));
      }
    }
    require(optimal > 0 && infeasible > 0, "one status never occurred");
    return fmt("500 programs: %d optimal and %d infeasible, all certified against "
               "basis enumeration",
               optimal, infeasible);
  });

  // 10. Information-measure properties behind the region bounds: the chain
  // rule, monotonicity of the eavesdropper bound, and extra receiver
  // conditioning never hurting.
  criterion(10, 0.0, [] {
    using VS = VariableSet;
    int channels = 0, checks = 0;
    for (int K = 1; K <= 3; ++K) {
      std::mt19937_64 rng(1000 + K);
      for (int i = 0; i < 20; ++i) {
        ChannelSpec ch = fuzz::random_channel(rng, K);
        MICache mi(joint_distribution(ch));
        std::uint32_t full = mi.full_mask();
        // Chain rule over every assignment of users to (S, T, given, unused).
        std::uint32_t combos = 1;
        for (int k = 0; k < K; ++k) combos *= 4;
        for (std::uint32_t code = 0; code < combos; ++code) {
          std::uint32_t S = 0, T = 0, G = 0, c = code;
          for (int k = 0; k < K; ++k) {
            std::uint32_t part = c % 4;
            c /= 4;
            if (part == 0) S |= 1u << k;
            if (part == 1) T |= 1u << k;
            if (part == 2) G |= 1u << k;
          }
          if (!S || !T) continue;
          double joint = mi.cond_mutual_info(VS::users(S | T), VS::y(), VS::users(G));
          double split = mi.cond_mutual_info(VS::users(T), VS::y(), VS::users(G)) +
                         mi.cond_mutual_info(VS::users(S), VS::y(), VS::users(T | G));
          require(std::fabs(joint - split) <= 1e-9,
                  fmt("K=%d i=%d: chain rule off by %.3g", K, i,
                      std::fabs(joint - split)));
          ++checks;
        }
        for (std::uint32_t kp : submasks_ascending(full)) {
          std::uint32_t comp = full & ~kp;
          for (std::uint32_t S : submasks_ascending(kp)) {
            for (std::uint32_t Sp : submasks_ascending(S)) {
              require(bound_to_eavesdropper(mi, kp, Sp) <=
                          bound_to_eavesdropper(mi, kp, S) + 1e-9,
                      fmt("K=%d i=%d: eavesdropper bound not monotone", K, i));
              ++checks;
            }
            for (std::uint32_t T : submasks_ascending(comp)) {
              require(bound_to_receiver(mi, kp, S, 0) <=
                          bound_to_receiver(mi, kp, S, T) + 1e-9,
                      fmt("K=%d i=%d: receiver bound drops when widened", K, i));
              ++checks;
            }
          }
        }
        ++channels;
      }
    }
    return fmt("%d channels, %d inequality checks within 1e-9", channels, checks);
  });

  if (g_failures) {
    std::printf("%d of 10 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}

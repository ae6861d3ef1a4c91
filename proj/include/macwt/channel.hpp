// Discrete memoryless multiple-access wiretap channel specifications and
// their joint input/output distributions.  A ChannelSpec is the single source
// of truth: per-user input pmfs plus the transition law p(y,z|x_1..x_K).
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace macwt {

struct ChannelSpec {
  std::vector<int> user_alphabets;              // |X_k|, k = 0..K-1
  int y_alphabet = 0;                           // |Y|
  int z_alphabet = 0;                           // |Z|
  std::vector<std::vector<double>> input_pmfs;  // p(x_k), one vector per user
  // p(y,z|x_1..x_K), flattened row-major with x_1 slowest, then x_2, ..., x_K, y, z.
  std::vector<double> transition;

  int user_count() const { return static_cast<int>(user_alphabets.size()); }
  std::size_t input_combinations() const;
  std::uint32_t full_mask() const { return (1u << user_count()) - 1u; }

  bool operator==(const ChannelSpec&) const = default;
};

// Joint distribution p(x_1..x_K, y, z).  Axis order: the K user axes in user
// order, then Y, then Z; flattened row-major.
struct JointDistribution {
  int users = 0;                   // K
  std::vector<int> axis_sizes;     // K + 2 entries
  std::vector<double> p;           // row-major tensor

  std::size_t size() const { return p.size(); }
  int y_axis() const { return users; }
  int z_axis() const { return users + 1; }
};

// Parses and validates a JSON channel document:
//   {"users":[{"pmf":[...]}, ...], "y_size":n, "z_size":m, "transition":[...]}
// Throws Error(schema|normalization|dimension) naming the offending field,
// pmf, or input combination.
ChannelSpec parse_channel(std::string_view json_text);

// Canonical renderer: keys in schema order, floats with 17 significant
// digits.  parse_channel(render_channel(s)) == s bit-exactly.
std::string render_channel(const ChannelSpec& spec);

// p(x_K, y, z) = prod_k p(x_k) * p(y,z|x_K), entrywise.
JointDistribution joint_distribution(const ChannelSpec& spec);

// Same channel toward the legitimate receiver, but Z replaced by a point
// mass independent of the inputs (|Z| = 1).  Idempotent.
ChannelSpec degenerate_eve(const ChannelSpec& spec);

// Validates every ChannelSpec invariant (pmf ranges and sums, transition row
// sums, dimension consistency).  parse_channel calls this; direct
// constructions can call it explicitly.
void validate_channel(const ChannelSpec& spec);

}  // namespace macwt

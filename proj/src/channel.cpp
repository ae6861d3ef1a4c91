#include "macwt/channel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "macwt/error.hpp"

namespace macwt {

namespace {

constexpr double kPmfTol = 1e-12;

// %.17g round-trips every double exactly through strtod.
std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_pmf_entry(double v, const char* where, const nlohmann::json& detail) {
  if (!(v >= 0.0) || v > 1.0 || !std::isfinite(v))
    throw Error(errc::normalization, std::string(where) + " entry outside [0,1]", detail);
}

}  // namespace

std::size_t ChannelSpec::input_combinations() const {
  std::size_t n = 1;
  for (int a : user_alphabets) n *= static_cast<std::size_t>(a);
  return n;
}

void validate_channel(const ChannelSpec& spec) {
  const int K = spec.user_count();
  if (K < 1) throw Error(errc::schema, "channel needs at least one user");
  if (K > 16) throw Error(errc::schema, "more than 16 users is not supported");
  if (spec.y_alphabet < 1 || spec.z_alphabet < 1)
    throw Error(errc::schema, "output alphabet sizes must be positive",
                {{"y_size", spec.y_alphabet}, {"z_size", spec.z_alphabet}});
  if (static_cast<int>(spec.input_pmfs.size()) != K)
    throw Error(errc::dimension, "one input pmf required per user",
                {{"users", K}, {"pmfs", spec.input_pmfs.size()}});
  for (int k = 0; k < K; ++k) {
    if (spec.user_alphabets[k] < 1)
      throw Error(errc::schema, "alphabet sizes must be positive", {{"user", k + 1}});
    const auto& pmf = spec.input_pmfs[k];
    if (static_cast<int>(pmf.size()) != spec.user_alphabets[k])
      throw Error(errc::dimension, "input pmf length does not match alphabet",
                  {{"user", k + 1},
                   {"alphabet", spec.user_alphabets[k]},
                   {"pmf_length", pmf.size()}});
    double s = 0.0;
    for (double v : pmf) {
      check_pmf_entry(v, "input pmf", {{"user", k + 1}});
      s += v;
    }
    if (std::fabs(s - 1.0) > kPmfTol)
      throw Error(errc::normalization, "input pmf does not sum to 1",
                  {{"user", k + 1}, {"sum", s}});
  }
  const std::size_t rows = spec.input_combinations();
  const std::size_t row_len =
      static_cast<std::size_t>(spec.y_alphabet) * static_cast<std::size_t>(spec.z_alphabet);
  if (spec.transition.size() != rows * row_len)
    throw Error(errc::dimension, "transition tensor size does not match alphabets",
                {{"expected", rows * row_len}, {"actual", spec.transition.size()}});
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t j = 0; j < row_len; ++j) {
      double v = spec.transition[r * row_len + j];
      check_pmf_entry(v, "transition", {{"input_index", r}});
      s += v;
    }
    if (std::fabs(s - 1.0) > kPmfTol)
      throw Error(errc::normalization, "transition row does not sum to 1",
                  {{"input_index", r}, {"sum", s}});
  }
}

ChannelSpec parse_channel(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::schema, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(errc::schema, "channel document must be an object");
  for (const char* key : {"users", "y_size", "z_size", "transition"})
    if (!doc.contains(key))
      throw Error(errc::schema, "missing required field", {{"field", key}});

  ChannelSpec spec;
  const auto& users = doc["users"];
  if (!users.is_array() || users.empty())
    throw Error(errc::schema, "\"users\" must be a non-empty array");
  for (std::size_t k = 0; k < users.size(); ++k) {
    const auto& u = users[k];
    if (!u.is_object() || !u.contains("pmf") || !u["pmf"].is_array())
      throw Error(errc::schema, "each user needs a \"pmf\" array", {{"user", k + 1}});
    std::vector<double> pmf;
    for (const auto& v : u["pmf"]) {
      if (!v.is_number())
        throw Error(errc::schema, "pmf entries must be numbers", {{"user", k + 1}});
      pmf.push_back(v.get<double>());
    }
    spec.user_alphabets.push_back(static_cast<int>(pmf.size()));
    spec.input_pmfs.push_back(std::move(pmf));
  }
  if (!doc["y_size"].is_number_integer() || !doc["z_size"].is_number_integer())
    throw Error(errc::schema, "\"y_size\" and \"z_size\" must be integers");
  spec.y_alphabet = doc["y_size"].get<int>();
  spec.z_alphabet = doc["z_size"].get<int>();
  if (!doc["transition"].is_array())
    throw Error(errc::schema, "\"transition\" must be an array");
  for (const auto& v : doc["transition"]) {
    if (!v.is_number())
      throw Error(errc::schema, "transition entries must be numbers");
    spec.transition.push_back(v.get<double>());
  }
  validate_channel(spec);
  return spec;
}

std::string render_channel(const ChannelSpec& spec) {
  std::string out = "{\"users\":[";
  for (int k = 0; k < spec.user_count(); ++k) {
    if (k) out += ',';
    out += "{\"pmf\":[";
    const auto& pmf = spec.input_pmfs[k];
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      if (i) out += ',';
      out += format17(pmf[i]);
    }
    out += "]}";
  }
  out += "],\"y_size\":" + std::to_string(spec.y_alphabet);
  out += ",\"z_size\":" + std::to_string(spec.z_alphabet);
  out += ",\"transition\":[";
  for (std::size_t i = 0; i < spec.transition.size(); ++i) {
    if (i) out += ',';
    out += format17(spec.transition[i]);
  }
  out += "]}";
  return out;
}

JointDistribution joint_distribution(const ChannelSpec& spec) {
  const int K = spec.user_count();
  JointDistribution joint;
  joint.users = K;
  joint.axis_sizes.assign(spec.user_alphabets.begin(), spec.user_alphabets.end());
  joint.axis_sizes.push_back(spec.y_alphabet);
  joint.axis_sizes.push_back(spec.z_alphabet);

  const std::size_t rows = spec.input_combinations();
  const std::size_t row_len =
      static_cast<std::size_t>(spec.y_alphabet) * static_cast<std::size_t>(spec.z_alphabet);
  joint.p.resize(rows * row_len);

  std::vector<int> x(K, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    double px = 1.0;
    for (int k = 0; k < K; ++k) px *= spec.input_pmfs[k][x[k]];
    const double* src = spec.transition.data() + r * row_len;
    double* dst = joint.p.data() + r * row_len;
    for (std::size_t j = 0; j < row_len; ++j) dst[j] = px * src[j];
    for (int k = K - 1; k >= 0; --k) {  // odometer over (x_1..x_K), x_K fastest
      if (++x[k] < spec.user_alphabets[k]) break;
      x[k] = 0;
    }
  }
  return joint;
}

ChannelSpec degenerate_eve(const ChannelSpec& spec) {
  ChannelSpec out = spec;
  out.z_alphabet = 1;
  const std::size_t rows = spec.input_combinations();
  out.transition.assign(rows * static_cast<std::size_t>(spec.y_alphabet), 0.0);
  // p(y, z=0 | x) = sum_z p(y,z|x): Z becomes a point mass independent of everything.
  for (std::size_t r = 0; r < rows; ++r)
    for (int y = 0; y < spec.y_alphabet; ++y) {
      double s = 0.0;
      for (int z = 0; z < spec.z_alphabet; ++z)
        s += spec.transition[(r * spec.y_alphabet + y) * spec.z_alphabet + z];
      out.transition[r * spec.y_alphabet + y] = s;
    }
  return out;
}

}  // namespace macwt

// Error type carried by every failing operation.  `code` is a stable
// machine-readable identifier (the CLI maps it to {"error": code, "detail":
// {...}} on stderr); `detail` holds structured context such as the offending
// index or the two sides of a violated bound.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace macwt {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message,
        nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), code_(std::move(code)), detail_(std::move(detail)) {}

  const std::string& code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  nlohmann::json detail_;
};

// Stable code strings.
namespace errc {
inline constexpr const char* schema = "schema";
inline constexpr const char* normalization = "normalization";
inline constexpr const char* dimension = "dimension";
inline constexpr const char* overlap = "overlap";
inline constexpr const char* subset = "subset";
inline constexpr const char* internal = "internal";
inline constexpr const char* hypothesis = "hypothesis";
inline constexpr const char* infeasible = "infeasible";
inline constexpr const char* unbounded = "unbounded";
inline constexpr const char* resource = "resource";
inline constexpr const char* iterations = "iterations";
inline constexpr const char* zero_secrecy = "zero-secrecy";
}  // namespace errc

}  // namespace macwt

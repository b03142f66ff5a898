#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace owl2fl {

enum class Severity { Error, Warning, Info };

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

/// Stable diagnostic codes. Tools and tests match on these strings.
namespace codes {
inline constexpr std::string_view kUnknownConstruct = "unknown-construct";
inline constexpr std::string_view kUnresolvedPrefix = "unresolved-prefix";
inline constexpr std::string_view kUnknownXmlType = "unknown-xml-type";
inline constexpr std::string_view kMalformedXml = "malformed-xml";
inline constexpr std::string_view kMissingAttribute = "missing-attribute";
inline constexpr std::string_view kInvalidCardinality = "invalid-cardinality";
inline constexpr std::string_view kUntranslatableExistential = "untranslatable-existential";
inline constexpr std::string_view kUntranslatableDisjunction = "untranslatable-disjunction";
inline constexpr std::string_view kUnsupportedExpression = "unsupported-expression";
inline constexpr std::string_view kCaseSplitDisjunction = "case-split-disjunction";
inline constexpr std::string_view kLloydTopor = "lloyd-topor";
inline constexpr std::string_view kSyntaxError = "syntax-error";
inline constexpr std::string_view kUnrepresentableInOwl = "unrepresentable-in-owl";
inline constexpr std::string_view kLossyOrigin = "lossy-origin";
inline constexpr std::string_view kFunctionSymbols = "function-symbols-unsupported";
inline constexpr std::string_view kNonRangeRestricted = "non-range-restricted";
inline constexpr std::string_view kUnsupportedClassExpression = "unsupported-class-expression";
inline constexpr std::string_view kNonStratified = "non-stratified-program";
inline constexpr std::string_view kUnsafeGoal = "unsafe-goal";
inline constexpr std::string_view kNonGroundInsert = "non-ground-insert";
inline constexpr std::string_view kUnknownName = "unknown-name";
inline constexpr std::string_view kIoError = "io-error";
}  // namespace codes

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::optional<SourceLocation> location;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline Diagnostic make_diagnostic(Severity severity, std::string_view code, std::string message,
                                  std::optional<SourceLocation> location = std::nullopt) {
  return Diagnostic{severity, std::string(code), std::move(message), location};
}

inline bool has_errors(const Diagnostics& diags) {
  for (const auto& d : diags) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

inline std::size_t count_code(const Diagnostics& diags, std::string_view code) {
  std::size_t n = 0;
  for (const auto& d : diags) {
    if (d.code == code) ++n;
  }
  return n;
}

inline std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

/// `file:line:col: severity[code]: message`
inline void print_diagnostic(std::ostream& os, const Diagnostic& d, std::string_view file = {}) {
  if (!file.empty()) os << file << ':';
  if (d.location) os << d.location->line << ':' << d.location->column << ':';
  if (!file.empty() || d.location) os << ' ';
  os << to_string(d.severity) << '[' << d.code << "]: " << d.message << '\n';
}

/// Thrown by operations that cannot produce a partial result (stratification,
/// unsafe goals, non-ground inserts).
class Error : public std::runtime_error {
 public:
  explicit Error(Diagnostic diag) : std::runtime_error(diag.message), diag_(std::move(diag)) {}
  const Diagnostic& diagnostic() const noexcept { return diag_; }
  const std::string& code() const noexcept { return diag_.code; }

 private:
  Diagnostic diag_;
};

}  // namespace owl2fl

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpoincare/exprio.hpp"
#include "qpoincare/presentations.hpp"

namespace qpoincare {

inline constexpr const char* kToolVersion = "0.1.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownTarget : public std::invalid_argument {
 public:
  UnknownTarget(const std::string& message, std::size_t line) : std::invalid_argument(message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class CheckStatus { Pass, Fail, FailWithOverlayPass };

std::string statusName(CheckStatus s);
CheckStatus parseStatus(const std::string& s);

struct CheckResult {
  std::string id;
  /// Presentation or map the check belongs to.
  std::string target;
  CheckStatus status = CheckStatus::Pass;
  /// Canonical text of the residual; empty exactly when the status is pass.
  std::string residual;
  std::int64_t ms = 0;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// One replacement of a table entry, with its justification.
struct OverlayEntry {
  enum class Kind { Commutator, Coproduct, Antipode };
  Kind kind = Kind::Commutator;
  std::string presentation;
  /// Letter; for commutators also the second letter or momentum name.
  std::string first;
  std::string second;
  std::string expression;
  std::string reason;
  std::size_t line = 0;
  std::size_t exprColumn = 0;
};

struct Overlay {
  std::string source;
  std::vector<OverlayEntry> entries;

  bool touches(PresentationKind kind) const;
};

/// Line format, '#' starts a comment:
///   commutator <presentation> <A> <B> = <expr>
///   coproduct <presentation> <A> = <tensor expr>
///   antipode <presentation> <A> = <expr>
///     reason: <free text>                 (indented, optional)
/// Throws ParseError (with line/column) or UnknownTarget.
Overlay parseOverlay(const std::string& text, const std::string& source);
Overlay loadOverlay(const std::string& path);

/// Applies the entries for `data`'s presentation; expressions are elaborated
/// against the unmodified presentation.
PresentationData applyOverlay(const Overlay& overlay, const PresentationData& data);

inline const std::vector<std::string>& checkNames() {
  static const std::vector<std::string> names{"jacobi",          "hopf-axioms",          "delta-morphism",
                                              "antipode-antimorphism", "antipode-equivalence", "map-morphism"};
  return names;
}

struct SuiteConfig {
  std::vector<std::string> presentations;
  std::string metric = "generic";
  std::vector<std::string> checks;
  std::vector<std::string> maps;
  std::optional<Overlay> overlay;
  bool acceptOverlay = false;
  bool timings = false;
  unsigned jobs = 1;
};

struct Summary {
  int pass = 0;
  int fail = 0;
  int overlay = 0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct Report {
  std::string version = kToolVersion;
  /// Ordered (key, value) echo of the configuration.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CheckResult> checks;
  Summary summary;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Expands "all" and csv lists; throws ConfigError for unknown names or an
/// empty check list.
SuiteConfig normalizeConfig(SuiteConfig config);

/// Runs the selected checks; failures never abort the suite. Results are
/// sorted by check id.
Report runSuite(const SuiteConfig& config);

/// 0 when everything passes (overlay passes count only when accepted), else 1.
int exitCode(const Report& report, bool acceptOverlay);

enum class ReportFormat { Text, Json };

void emitReport(const Report& report, ReportFormat format, std::ostream& out);
/// Writes to `path`; throws std::runtime_error naming the path on failure.
void emitReport(const Report& report, ReportFormat format, const std::string& path);
/// Inverse of the JSON emitter.
Report reportFromJson(const std::string& text);

std::vector<std::string> splitCsv(const std::string& s);

}  // namespace qpoincare

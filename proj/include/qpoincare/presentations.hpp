#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpoincare/hopf.hpp"
#include "qpoincare/ncalg.hpp"

namespace qpoincare {

class UnknownPresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotTriangular : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Upper-index metric g^{mu nu}: ten indeterminates, or a concrete symmetric matrix.
class MetricSpec {
 public:
  enum class Mode { Generic, Concrete };
  using Matrix = std::array<std::array<Gaussian, 4>, 4>;

  static MetricSpec generic();
  static MetricSpec concrete(std::string name, const Matrix& entries);
  /// Light-cone metric: g^{03} = g^{30} = 1, g^{11} = g^{22} = -1.
  static MetricSpec nullPlane();
  /// Diag(1, -1, -1, -1).
  static MetricSpec minkowski();
  /// 16 whitespace-separated rationals, row-major.
  static MetricSpec fromFile(const std::string& path);
  static MetricSpec fromText(const std::string& text, std::string name);
  /// generic | null | minkowski | file:PATH
  static MetricSpec byName(const std::string& name);

  Mode mode() const { return mode_; }
  const std::string& name() const { return name_; }
  const Matrix& entries() const { return entries_; }
  /// g^{mu nu} as a coefficient.
  Poly g(int mu, int nu) const;
  /// Determinant of a concrete metric (zero for generic).
  Gaussian determinant() const;
  /// Warning text for a degenerate concrete metric.
  std::optional<std::string> warning() const;
  /// Substitution binding the metric indeterminates to this metric's entries.
  Substitution binding() const;

 private:
  Mode mode_ = Mode::Generic;
  std::string name_ = "generic";
  Matrix entries_{};
};

enum class PresentationKind { KappaOriginal, KappaNew, NullPlane };

/// One defining relation [a, b] = rhs, with a a letter.
struct Relation {
  std::string id;
  Generator a;
  Generator b;
  Element rhs;
};

/// Raw tables of a presentation before the engine is built; overlays edit this.
struct PresentationData {
  std::string name;
  PresentationKind kind = PresentationKind::KappaOriginal;
  MetricSpec metric;
  RelationTable relations;
  HopfTables hopf;
  /// Letters whose antipode is materialized from the conjugation form.
  std::array<bool, kLetters> antipodeFromConjugation{};
};

class Presentation {
 public:
  explicit Presentation(PresentationData data);

  const std::string& name() const { return data_.name; }
  PresentationKind kind() const { return data_.kind; }
  const MetricSpec& metric() const { return data_.metric; }
  const PresentationData& data() const { return data_; }
  const Algebra& algebra() const { return *algebra_; }
  const HopfTables& hopf() const { return data_.hopf; }
  HopfContext context() const { return {*algebra_, data_.hopf}; }

  const std::vector<std::string>& letterNames() const { return data_.relations.letterNames; }
  std::optional<int> letterIndex(const std::string& name) const;
  /// P0..P3, or P+ P1 P2 P- in the null plane.
  std::string momentumName(int mu) const;
  std::string generatorName(const Generator& g) const;
  /// All 15 letter pairs (larger letter first) and all letter-momentum rows.
  const std::vector<Relation>& relations() const { return relationList_; }
  const Relation* findRelation(const Generator& a, const Generator& b) const;

  /// E1 P2 - E2 P1 + J3 sinh(z P+)/z (null plane only).
  std::optional<Element> wConstant() const;

 private:
  PresentationData data_;
  std::shared_ptr<const Algebra> algebra_;
  std::vector<Relation> relationList_;
};

std::vector<std::string> presentationNames();
PresentationKind parsePresentationKind(const std::string& name);
std::string presentationName(PresentationKind kind);

/// Index-level expansion of the tensor relations of the original kappa basis
/// (letters M1 M2 M3 N1 N2 N3 with M^i = 1/2 eps^{ijk} M^{jk}, N^i = M^{i0},
/// eps^{123} = -1).
RelationTable expandTensorRelations(const MetricSpec& metric);

PresentationData presentationData(PresentationKind kind, const MetricSpec& metric);
std::shared_ptr<const Presentation> buildPresentation(PresentationKind kind, const MetricSpec& metric);
std::shared_ptr<const Presentation> buildPresentation(const std::string& name, const MetricSpec& metric);

/// A generator map with its verified inverse.
struct PresentationMap {
  std::string name;
  std::shared_ptr<const Presentation> source;
  std::shared_ptr<const Presentation> target;
  GenMap forward;
  GenMap inverse;

  Element apply(const Element& x) const { return applyMap(forward, target->algebra(), x); }
  Element applyInverse(const Element& x) const { return applyMap(inverse, source->algebra(), x); }
};

std::vector<std::string> mapNames();

/// basis-change: kappa-new -> kappa-original (same metric).
/// null-iso: null-plane -> kappa-original with the light-cone metric.
/// null-dict: null-plane -> kappa-new with the light-cone metric.
GenMap makeMap(const std::string& name);
/// Source and target presentations of a named map; `metric` feeds basis-change.
std::pair<PresentationKind, PresentationKind> mapEndpoints(const std::string& name);

/// Inverse by back-substitution over the letter order; round trips are
/// checked on every generator. Throws NotTriangular.
GenMap invertMap(const GenMap& map, const Algebra& source, const Algebra& target);

PresentationMap buildMap(const std::string& name, const MetricSpec& metric,
                         std::shared_ptr<const Presentation> source = nullptr,
                         std::shared_ptr<const Presentation> target = nullptr);

/// eps^{ijk} with eps^{123} = -1 (indices 1..3).
int epsilonUpper(int i, int j, int k);

}  // namespace qpoincare

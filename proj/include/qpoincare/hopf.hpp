#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qpoincare/ncalg.hpp"

namespace qpoincare {

/// Coproduct, counit and antipode data on generators. Coefficient images
/// (momenta and E) are ring homomorphisms; letter images are extended
/// (anti-)multiplicatively.
struct HopfTables {
  std::array<TensorElement, kLetters> coproductLetters{};
  /// Delta(P_mu) in the slot-0/slot-1 coefficient ring.
  std::array<Poly, 4> coproductMomenta{};
  Poly coproductE;

  std::array<Element, kLetters> antipodeLetters{};
  std::array<Poly, 4> antipodeMomenta{};
  Poly antipodeE;

  /// When set, S(X) = -exp(alpha) X exp(-alpha) is an alternative form.
  std::optional<Poly> conjugationExponent;

  Substitution coproductSubstitution() const;
  Substitution counitSubstitution() const;
  GenMap antipodeMap() const;

  /// Group-likeness of E whenever Delta(P0) is primitive. Throws InvalidTable.
  void validate() const;
};

/// The pieces of a presentation the Hopf layer needs.
struct HopfContext {
  const Algebra& algebra;
  const HopfTables& tables;
};

template <std::size_t N>
LinearCombination<std::array<Monomial, N>> tensorMultiply(const Algebra& alg,
                                                          const LinearCombination<std::array<Monomial, N>>& a,
                                                          const LinearCombination<std::array<Monomial, N>>& b);

extern template TensorElement tensorMultiply<2>(const Algebra&, const TensorElement&, const TensorElement&);
extern template Tensor3Element tensorMultiply<3>(const Algebra&, const Tensor3Element&, const Tensor3Element&);

/// x (slot 0) (x) y (slot 1).
TensorElement tensorProduct(const Element& left, const Element& right);
TensorElement tensorCommutator(const Algebra& alg, const TensorElement& a, const TensorElement& b);

TensorElement coproduct(const HopfContext& h, const Element& x);
/// Lands in the base ring (z and metric entries only).
Poly counit(const HopfContext& h, const Element& x);
Element antipode(const HopfContext& h, const Element& x);

/// m o (S (x) id) and m o (id (x) S).
Element multiplyAntipodeLeft(const HopfContext& h, const TensorElement& t);
Element multiplyAntipodeRight(const HopfContext& h, const TensorElement& t);

enum class Axiom { Coassociativity, CounitLeft, CounitRight, AntipodeLeft, AntipodeRight };

/// Residual of one Hopf axiom on one generator; zero means the axiom holds.
/// Coassociativity residuals live in the tensor cube, the rest in the algebra.
Tensor3Element coassociativityResidual(const HopfContext& h, const Generator& g);
Element axiomResidual(const HopfContext& h, Axiom kind, const Generator& g);

/// (phi (x) phi) applied slot-wise.
TensorElement applyMapTensor(const GenMap& map, const Algebra& target, const TensorElement& t);

}  // namespace qpoincare

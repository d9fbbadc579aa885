#pragma once

#include "filtmult/hull.hpp"
#include "filtmult/monomial_ideal.hpp"
#include "filtmult/rational.hpp"

#include <span>
#include <vector>

namespace filtmult {

/// Newton polyhedron conv{g + R^d_{>=0} : g a generator}.
///
/// For d <= 3 the region carries its facet description: every facet
/// normal · x >= offset with a nonnegative normal and positive offset (the
/// coordinate facets x_i >= 0 are implicit). In higher dimension membership
/// falls back to an exact linear program.
class NewtonRegion {
 public:
  explicit NewtonRegion(MonomialIdeal ideal);

  int dim() const noexcept { return ideal_.dim(); }
  const MonomialIdeal& ideal() const noexcept { return ideal_; }
  bool has_facets() const noexcept { return has_facets_; }
  const std::vector<geometry::HalfSpace>& facets() const noexcept { return facets_; }

  /// Membership of a lattice point of the orthant.
  bool contains(std::span<const int> a) const;

 private:
  MonomialIdeal ideal_;
  bool has_facets_ = false;
  std::vector<geometry::HalfSpace> facets_;
};

NewtonRegion newton_region(const MonomialIdeal& ideal);

/// Exact volume of the orthant minus the region. d <= 3 only.
/// Throws NotMPrimary or DimensionUnsupported.
Rational covolume(const NewtonRegion& region);

/// Ideal of all lattice points in the Newton polyhedron.
MonomialIdeal integral_closure(const MonomialIdeal& ideal);

/// Exact LP test: is `a` in conv(gens) + orthant? Works in every dimension.
bool newton_polyhedron_contains_lp(const MonomialIdeal& ideal, std::span<const Rational> a);

/// Same test for conv(points) + orthant with rational points.
bool polyhedron_contains_lp(const std::vector<std::vector<Rational>>& points, std::span<const Rational> a);

}  // namespace filtmult

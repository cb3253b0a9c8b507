#pragma once

#include <mfour/matrix.hpp>
#include <mfour/ore.hpp>
#include <mfour/poly.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mfour {

/// Finitely presented k[s]-module: the cokernel of the row space of
/// `presentation` (one row per relation, one column per generator).
/// `shift`, when present, gives the images of the generators under a
/// semilinear tau with tau(p(s) m) = p(s+1) tau(m); `shift_inverse` likewise.
struct EquivariantModule {
  PolyMatrix presentation;
  std::vector<std::string> generator_names;
  std::optional<PolyMatrix> shift;
  std::optional<PolyMatrix> shift_inverse;

  std::size_t generators() const { return presentation.cols(); }
};

/// Module with no relations on `generators` free generators.
EquivariantModule free_module(std::size_t generators);

/// tau maps relations into relations and tau_inverse * tau = id modulo the
/// presentation (both on generators).
bool shift_is_consistent(const EquivariantModule& m);

/// Local structure of a module at s = a, truncated at order n:
/// (+) k[s]/(s-a)^{e_i}, exponents ascending and nonzero.
struct Fiber {
  Rational point;
  int order = 1;
  std::vector<int> exponents;
  std::vector<std::string> generators;

  bool is_zero() const { return exponents.empty(); }
  bool is_free(std::size_t rank = 1) const;
  int length() const;
};

/// k[s]-submodule of k(s) generated by finitely many rational functions
/// whose poles lie in chi + [-radius, radius].
class WindowedLattice {
 public:
  WindowedLattice(Rational chi, int radius, std::vector<RatFun> generators);

  const Rational& chi() const { return chi_; }
  int radius() const { return radius_; }
  const std::vector<RatFun>& generators() const { return generators_; }

  /// The lattice is principal; this is its monic-normalized generator.
  const RatFun& cyclic_generator() const { return cyclic_; }
  /// Minimum valuation at a over the lattice.
  int valuation(const Rational& a) const;
  /// (point, minimum valuation) for every window point chi + i.
  std::vector<std::pair<Rational, int>> valuation_table() const;
  bool contains(const RatFun& f) const;
  bool in_window(const Rational& a) const;

 private:
  Rational chi_;
  int radius_;
  std::vector<RatFun> generators_;
  RatFun cyclic_;
};

/// Torsion family supported on chi + Z, truncated to |i| <= radius.
/// shift_units[i + radius] is the unit u with gen_i * T^-1 = u * gen_{i+1}.
struct SkyscraperFamily {
  Rational chi;
  int radius = 0;
  int order = 1;
  std::vector<Fiber> fibers;
  std::vector<Rational> shift_units;

  const Fiber& at(int i) const { return fibers.at(static_cast<std::size_t>(i + radius)); }
  bool is_edge(int i) const { return i == -radius || i == radius; }
  bool is_zero() const;
};

/// chi in Z is replaced by 0; other values are kept.
Rational normalize_chi(const Rational& chi);
bool same_orbit(const Rational& a, const Rational& b);

// --- Canonical objects -----------------------------------------------------

CyclicPresentation b_module();    // (s+1) - T^-1 s
CyclicPresentation e_module();    // 1 - T^-1 s
CyclicPresentation exp_module();  // Weyl: 1 - d
/// Restriction of B to G_m: d (x - 1).
CyclicPresentation b_weyl_module();
/// Windowed image of A_{chi,n}/k[s]: fiber k[s]/(s-chi-i)^n at each i.
SkyscraperFamily i0_module(const Rational& chi, int n, int radius);
/// Diagonal presentation of a skyscraper family.
EquivariantModule to_equivariant(const SkyscraperFamily& f);

// --- Operations ------------------------------------------------------------

CyclicPresentation mellin_module(const CyclicPresentation& m);

/// f . (T^j p) = f(s + j) p(s)
RatFun right_action(const RatFun& f, const ShiftOp& op);

WindowedLattice embed_in_Ks(const CyclicPresentation& m, const RatFun& image, int radius);

/// k[s]-presentation of D/gD on generators e_j = class of T^j, |j| <= W,
/// keeping every relation g T^m whose support fits in the window.
EquivariantModule window_presentation(const ShiftOp& g, int W);

Fiber fiber(const WindowedLattice& m, const Rational& a, int n);
Fiber fiber(const EquivariantModule& m, const Rational& a, int n);
Fiber fiber(const SkyscraperFamily& m, const Rational& a);
/// One Smith form shared across all points.
std::vector<Fiber> fibers(const EquivariantModule& m, const std::vector<Rational>& points, int n);

EquivariantModule tensor_equivariant(const EquivariantModule& a, const EquivariantModule& b);
SkyscraperFamily tensor_equivariant(const SkyscraperFamily& a, const SkyscraperFamily& b);

bool monodromic_test(const EquivariantModule& m);

struct HomVanishing {
  bool vanishes = false;
  /// max_k deg(g_k / r) for the cyclic generator r; phi(r) = P forces
  /// deg phi(g_k) = this + deg P.
  int forced_degree = 0;
};
HomVanishing hom_to_free_vanishes(const WindowedLattice& m, int degree_bound);

bool localization_identity_check(const WindowedLattice& m, const std::vector<Rational>& test_points);

enum class SkyscraperKind { B, E };

struct FreenessWitness {
  bool free = false;
  SkyscraperFamily family;
  std::string counterexample;
};
FreenessWitness skyscraper_freeness_check(SkyscraperKind kind, const Rational& chi, int n, int radius);

struct MonodromizationResult {
  bool ok = false;
  SkyscraperFamily target;
  SkyscraperFamily with_b;
  SkyscraperFamily with_e;
  std::vector<Rational> b_scalars;  // fiberwise isomorphism, generator to c_i * generator
  std::vector<Rational> e_scalars;
  std::string report;
};
MonodromizationResult monodromization_check(const Rational& chi, int n, int radius);
/// Same construction with the free module k[s] in place of B and E.
MonodromizationResult monodromization_control(const Rational& chi, int n, int radius);

struct ExpSquareResult {
  bool ok = false;
  int a = 0;  // witness 1T^a (x) 1T^b
  int b = 0;
  std::string generator;
  std::string relation;
  std::vector<int> fiber_ranks;
  std::string report;
};
/// Searches 1T^a (x) 1T^b in left (x) right for a generator satisfying the
/// B relation. Defaults to iota^*E (x) E.
ExpSquareResult exp_square_check(int radius);
ExpSquareResult exp_square_search(const ShiftOp& left, const ShiftOp& right, int radius);

CyclicPresentation fourier_presentation(const CyclicPresentation& m);
CyclicPresentation fourier_B_monodromic(const CyclicPresentation& m);

}  // namespace mfour

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "distribution.hpp"
#include "order.hpp"

namespace cfrac {

/// Measurement angle in the ZY plane, radians from the positive Z axis.
/// Values outside [0, pi] are legal (the projectors are periodic); callers
/// that care can test in_expected_range().
struct Angle {
  double radians = 0.0;
  bool in_expected_range() const;
};

using Complex = std::complex<double>;

/// Dense square complex matrix of dimension 2 or 4; just enough linear
/// algebra for projective measurements on a Bell pair.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  Complex& at(int r, int c) { return a_[static_cast<std::size_t>(r * dim_ + c)]; }
  const Complex& at(int r, int c) const { return a_[static_cast<std::size_t>(r * dim_ + c)]; }

  bool is_hermitian(double tol) const;
  bool is_idempotent(double tol) const;

 private:
  int dim_;
  std::vector<Complex> a_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Projector onto outcome `o` of the ZY-plane measurement at `gamma`:
/// (I + (-1)^o (cos gamma Z + sin gamma Y)) / 2.
ComplexMatrix projector(Angle gamma, int outcome);

/// <Phi+| projector(a, oa) (x) projector(b, ob) |Phi+>, evaluated by explicit
/// 4x4 contraction against the Bell state (|00> + |11>)/sqrt(2). Real within
/// 1e-12 by construction; the result is clamped to [0, 1].
double bell_pair_prob(Angle gamma_a, int oa, Angle gamma_b, int ob);

enum class OrderVariant : int {
  base = 0,      // A -> C and D -> B
  extended = 1,  // additionally A -> B
};

OrderVariant order_variant_from_name(const std::string& name);
const char* to_string(OrderVariant v);

/// The four-event order of the interleaved protocol (events A, B, C, D in
/// canonical order).
StaticCausalOrder::ConstPtr interleaved_order(OrderVariant variant);

struct ScenarioParams {
  Angle gamma0;
  Angle gamma1;
  OrderVariant variant = OrderVariant::base;
};

/// Two temporally interleaved Bell tests on |Phi+> pairs AB and CD: the
/// first party of each pair measures at the angle picked by its own input,
/// the second at the angle picked by its input XOR the other pair's first
/// outcome. The table factors into two bell_pair_prob terms per cell.
ConditionalDistribution interleaved_distribution(const ScenarioParams& params);

/// Plain two-party Bell test fixture on the discrete order: each party's
/// input picks one of its two angles.
ConditionalDistribution bipartite_bell_distribution(std::array<Angle, 2> angles_a,
                                                    std::array<Angle, 2> angles_b);

/// Angles reaching the Tsirelson CHSH value 2*sqrt(2) in the ZY plane.
inline constexpr std::array<double, 2> kTsirelsonAnglesA = {0.0, 1.5707963267948966};
inline constexpr std::array<double, 2> kTsirelsonAnglesB = {-0.7853981633974483,
                                                            0.7853981633974483};

}  // namespace cfrac

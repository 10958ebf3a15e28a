#include "quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfrac {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kImagTol = 1e-12;

}  // namespace

bool Angle::in_expected_range() const { return radians >= 0.0 && radians <= kPi; }

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim * dim)) {
  if (dim != 2 && dim != 4) throw InvalidArgumentError("matrix dimension must be 2 or 4");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    }
  }
  return true;
}

bool ComplexMatrix::is_idempotent(double tol) const {
  const ComplexMatrix sq = multiply(*this, *this);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      if (std::abs(sq.at(r, c) - at(r, c)) > tol) return false;
    }
  }
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) throw InvalidArgumentError("kron expects two 2x2 matrices");
  ComplexMatrix out(4);
  for (int ar = 0; ar < 2; ++ar)
    for (int ac = 0; ac < 2; ++ac)
      for (int br = 0; br < 2; ++br)
        for (int bc = 0; bc < 2; ++bc)
          out.at(ar * 2 + br, ac * 2 + bc) = a.at(ar, ac) * b.at(br, bc);
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgumentError("dimension mismatch");
  ComplexMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) {
      Complex s = 0.0;
      for (int k = 0; k < a.dim(); ++k) s += a.at(r, k) * b.at(k, c);
      out.at(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix projector(Angle gamma, int outcome) {
  if (outcome != 0 && outcome != 1) throw InvalidArgumentError("outcome must be a bit");
  const double sign = outcome == 0 ? 1.0 : -1.0;
  const double cz = std::cos(gamma.radians);
  const double sy = std::sin(gamma.radians);
  // (I + sign*(cz*Z + sy*Y)) / 2 with Z = diag(1,-1), Y = [[0,-i],[i,0]].
  ComplexMatrix h(2);
  h.at(0, 0) = 0.5 * (1.0 + sign * cz);
  h.at(0, 1) = Complex(0.0, -0.5 * sign * sy);
  h.at(1, 0) = Complex(0.0, 0.5 * sign * sy);
  h.at(1, 1) = 0.5 * (1.0 - sign * cz);
  return h;
}

double bell_pair_prob(Angle gamma_a, int oa, Angle gamma_b, int ob) {
  const ComplexMatrix m = kron(projector(gamma_a, oa), projector(gamma_b, ob));
  // |Phi+> has amplitude 1/sqrt(2) on |00> and |11>.
  static const std::array<Complex, 4> phi = {Complex(1.0 / std::sqrt(2.0)), Complex(0.0),
                                             Complex(0.0), Complex(1.0 / std::sqrt(2.0))};
  Complex value = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) value += std::conj(phi[r]) * m.at(r, c) * phi[c];
  }
  if (std::abs(value.imag()) > kImagTol) {
    throw InternalError("Bell probability has imaginary residue " +
                        std::to_string(value.imag()));
  }
  return std::clamp(value.real(), 0.0, 1.0);
}

OrderVariant order_variant_from_name(const std::string& name) {
  if (name == "base") return OrderVariant::base;
  if (name == "extended") return OrderVariant::extended;
  throw ParseError("unknown order variant '" + name + "' (expected base or extended)");
}

const char* to_string(OrderVariant v) {
  return v == OrderVariant::base ? "base" : "extended";
}

StaticCausalOrder::ConstPtr interleaved_order(OrderVariant variant) {
  std::vector<std::pair<std::string, std::string>> covers = {{"A", "C"}, {"D", "B"}};
  if (variant == OrderVariant::extended) covers.emplace_back("A", "B");
  return StaticCausalOrder::make_shared({"A", "B", "C", "D"}, covers);
}

ConditionalDistribution interleaved_distribution(const ScenarioParams& params) {
  const auto order = interleaved_order(params.variant);
  const SpaceSpec spec = SpaceSpec::binary(4);
  const std::array<Angle, 2> gamma = {params.gamma0, params.gamma1};

  // Event canonical order A, B, C, D; bit k of an index is event k's symbol.
  std::vector<double> table(16 * 16);
  for (std::uint32_t in = 0; in < 16; ++in) {
    const int ia = in & 1, ib = (in >> 1) & 1, ic = (in >> 2) & 1, id = (in >> 3) & 1;
    for (std::uint32_t out = 0; out < 16; ++out) {
      const int oa = out & 1, ob = (out >> 1) & 1, oc = (out >> 2) & 1, od = (out >> 3) & 1;
      const double p_ab = bell_pair_prob(gamma[ia], oa, gamma[ib ^ od], ob);
      const double p_cd = bell_pair_prob(gamma[ic ^ oa], oc, gamma[id], od);
      table[in * 16 + out] = p_ab * p_cd;
    }
  }
  return ConditionalDistribution(order, spec, std::move(table), kGeneratedTol);
}

ConditionalDistribution bipartite_bell_distribution(std::array<Angle, 2> angles_a,
                                                    std::array<Angle, 2> angles_b) {
  const auto order = StaticCausalOrder::make_shared({"A", "B"}, {});
  const SpaceSpec spec = SpaceSpec::binary(2);
  std::vector<double> table(4 * 4);
  for (std::uint32_t in = 0; in < 4; ++in) {
    const int ia = in & 1, ib = (in >> 1) & 1;
    for (std::uint32_t out = 0; out < 4; ++out) {
      const int oa = out & 1, ob = (out >> 1) & 1;
      table[in * 4 + out] = bell_pair_prob(angles_a[ia], oa, angles_b[ib], ob);
    }
  }
  return ConditionalDistribution(order, spec, std::move(table), kGeneratedTol);
}

}  // namespace cfrac

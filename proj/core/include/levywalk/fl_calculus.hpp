#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "levywalk/limit.hpp"
#include "levywalk/quadrature.hpp"
#include "levywalk/sampling.hpp"

namespace levywalk {

using cdouble = std::complex<double>;

struct FLOptions {
  /// Nodes of the circle rule used for uniform directions in d = 2.
  std::size_t circle_nodes = 64;
  QuadOptions quad{};
};

/// Fractional material derivative model: tail exponent or mixing density,
/// direction law, and the event ordering of the underlying walk.
class FLModelSpec {
 public:
  using Kind = std::variant<HeavyTailLaw, MixingDensity>;

  FLModelSpec(Kind kind, DirectionMeasure lambda, Scenario scenario = Scenario::wait_first,
              FLOptions opts = {});

  const Kind& kind() const noexcept { return kind_; }
  bool is_distributed() const noexcept { return std::holds_alternative<MixingDensity>(kind_); }
  const DirectionMeasure& lambda() const noexcept { return lambda_; }
  /// Atoms actually summed over (sphere rule for uniform directions).
  const DirectionMeasure& rule() const noexcept { return rule_; }
  Scenario scenario() const noexcept { return scenario_; }
  const FLOptions& options() const noexcept { return opts_; }
  std::size_t dim() const noexcept { return lambda_.dim(); }

 private:
  Kind kind_;
  DirectionMeasure lambda_;
  DirectionMeasure rule_;
  Scenario scenario_;
  FLOptions opts_;
};

/// Fourier variable k (d components) and Laplace variable s, Re(s) > 0.
struct FLPoint {
  std::vector<double> k;
  cdouble s;
};

/// psi(k, s): int (s - i<k,u>)^alpha Lambda(du), or
/// int_0^1 int (s - i<k,u>)^beta Gamma(1-beta) Lambda(du) p(beta) dbeta.
/// Throws DomainError when Re(s) <= 0.
cdouble fl_exponent(const FLModelSpec& model, const FLPoint& pt);

/// The material derivative acts on transformed densities as multiplication by psi.
cdouble apply_material_derivative_fl(const FLModelSpec& model, const FLPoint& pt, cdouble phat);

/// Transformed density of the wait-first limit: s^(alpha-1) / psi, or
/// [int Gamma(1-beta) s^(beta-1) p(beta) dbeta] / psi with the numerator and
/// psi integrated on one shared node set.
cdouble theoretical_p1_fl(const FLModelSpec& model, const FLPoint& pt);

/// Transformed right-hand side of the jump-first equation divided by psi, for
/// every atom with a = <k,u> != 0:
///   stable:      alpha [(-ia)^(alpha-1) - (s-ia)^(alpha-1)] / s
///   distributed: int Gamma(1-beta) [(-ia)^(beta-1) - (s-ia)^(beta-1)] / s p(beta) dbeta
/// Throws SingularConfigurationError if some atom with positive weight has
/// <k,u> = 0 (the source term diverges there, in particular at k = 0).
cdouble theoretical_p2_fl(const FLModelSpec& model, const FLPoint& pt);

/// Transformed right-hand side alone (numerator of theoretical_p2_fl).
cdouble jump_first_source_fl(const FLModelSpec& model, const FLPoint& pt);

/// Writes the k-grid x s-grid symbol table as CSV:
/// k1..kd,re_s,im_s,re_psi,im_psi,re_p1,im_p1,re_p2,im_p2 (p2 columns are
/// "nan" where the jump-first transform is singular).
void write_symbol_table(std::ostream& out, const FLModelSpec& model,
                        std::span<const std::vector<double>> kgrid, std::span<const cdouble> sgrid);

}  // namespace levywalk

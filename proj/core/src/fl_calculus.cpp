#include "levywalk/fl_calculus.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "levywalk/errors.hpp"

namespace levywalk {

FLModelSpec::FLModelSpec(Kind kind, DirectionMeasure lambda, Scenario scenario, FLOptions opts)
    : kind_(std::move(kind)),
      lambda_(lambda),
      rule_(lambda.quadrature_rule(opts.circle_nodes)),
      scenario_(scenario),
      opts_(opts) {}

namespace {

constexpr cdouble kI{0.0, 1.0};

void check_point(const FLModelSpec& model, const FLPoint& pt) {
  if (!(pt.s.real() > 0.0)) {
    throw DomainError("Laplace variable must have positive real part");
  }
  if (pt.k.size() != model.dim()) {
    throw ConfigError("Fourier variable has " + std::to_string(pt.k.size()) +
                      " components, model dimension is " + std::to_string(model.dim()));
  }
}

// <k, u_j> for every atom of the rule.
std::vector<double> projections(const FLModelSpec& model, const FLPoint& pt) {
  const auto& rule = model.rule();
  std::vector<double> a(rule.atom_count(), 0.0);
  for (std::size_t j = 0; j < rule.atom_count(); ++j) {
    const auto u = rule.atom(j);
    for (std::size_t c = 0; c < u.size(); ++c) a[j] += pt.k[c] * u[c];
  }
  return a;
}

// Sum over atoms of w_j (s - i a_j)^x.
cdouble atom_power_sum(const DirectionMeasure& rule, const std::vector<double>& a, cdouble s,
                       double x) {
  cdouble sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += rule.weight(j) * std::pow(s - kI * a[j], x);
  return sum;
}

// (-i a)^x on the boundary of the right half-plane, principal branch.
cdouble boundary_power(double a, double x) {
  // arg(-i a) = -sign(a) pi/2
  const double mag = std::pow(std::abs(a), x);
  const double phase = -std::copysign(M_PI / 2.0, a) * x;
  return std::polar(mag, phase);
}

void check_nonsingular(const std::vector<double>& a) {
  for (double v : a) {
    if (v == 0.0) {
      throw SingularConfigurationError(
          "jump-first transform is singular: some direction atom has <k,u> = 0 "
          "(the source term int_t^inf r^(-x) dr diverges without an oscillatory factor)");
    }
  }
}

}  // namespace

cdouble fl_exponent(const FLModelSpec& model, const FLPoint& pt) {
  check_point(model, pt);
  const auto a = projections(model, pt);
  if (const auto* law = std::get_if<HeavyTailLaw>(&model.kind())) {
    return atom_power_sum(model.rule(), a, pt.s, law->alpha());
  }
  const auto& p = std::get<MixingDensity>(model.kind());
  // Gamma(1-beta)(1-beta) = Gamma(2-beta).
  return integrate_mixing<cdouble>(
             p,
             [&](double beta) {
               return std::tgamma(2.0 - beta) * atom_power_sum(model.rule(), a, pt.s, beta);
             },
             model.options().quad)
      .value;
}

cdouble apply_material_derivative_fl(const FLModelSpec& model, const FLPoint& pt, cdouble phat) {
  return fl_exponent(model, pt) * phat;
}

cdouble theoretical_p1_fl(const FLModelSpec& model, const FLPoint& pt) {
  check_point(model, pt);
  const auto a = projections(model, pt);
  if (const auto* law = std::get_if<HeavyTailLaw>(&model.kind())) {
    const double alpha = law->alpha();
    return std::pow(pt.s, alpha - 1.0) / atom_power_sum(model.rule(), a, pt.s, alpha);
  }
  const auto& p = std::get<MixingDensity>(model.kind());
  using Pair = std::array<cdouble, 2>;
  const auto r = integrate_mixing<Pair>(
      p,
      [&](double beta) {
        const double g = std::tgamma(2.0 - beta);
        return Pair{g * atom_power_sum(model.rule(), a, pt.s, beta),
                    g * std::pow(pt.s, beta - 1.0)};
      },
      model.options().quad);
  return r.value[1] / r.value[0];
}

cdouble jump_first_source_fl(const FLModelSpec& model, const FLPoint& pt) {
  check_point(model, pt);
  const auto a = projections(model, pt);
  check_nonsingular(a);
  const auto& rule = model.rule();
  auto bracket = [&](double x) {
    cdouble sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      sum += rule.weight(j) * (boundary_power(a[j], x - 1.0) - std::pow(pt.s - kI * a[j], x - 1.0));
    }
    return sum / pt.s;
  };
  if (const auto* law = std::get_if<HeavyTailLaw>(&model.kind())) {
    return law->alpha() * bracket(law->alpha());
  }
  const auto& p = std::get<MixingDensity>(model.kind());
  return integrate_mixing<cdouble>(
             p, [&](double beta) { return std::tgamma(2.0 - beta) * bracket(beta); },
             model.options().quad)
      .value;
}

cdouble theoretical_p2_fl(const FLModelSpec& model, const FLPoint& pt) {
  return jump_first_source_fl(model, pt) / fl_exponent(model, pt);
}

void write_symbol_table(std::ostream& out, const FLModelSpec& model,
                        std::span<const std::vector<double>> kgrid,
                        std::span<const cdouble> sgrid) {
  const std::size_t d = model.dim();
  for (std::size_t c = 0; c < d; ++c) out << 'k' << (c + 1) << ',';
  out << "re_s,im_s,re_psi,im_psi,re_p1,im_p1,re_p2,im_p2\n";
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  for (const auto& k : kgrid) {
    for (const auto& s : sgrid) {
      const FLPoint pt{k, s};
      const cdouble psi = fl_exponent(model, pt);
      const cdouble p1 = theoretical_p1_fl(model, pt);
      std::string p2re = "nan", p2im = "nan";
      try {
        const cdouble p2 = theoretical_p2_fl(model, pt);
        p2re = num(p2.real());
        p2im = num(p2.imag());
      } catch (const SingularConfigurationError&) {
      }
      for (double kc : k) out << num(kc) << ',';
      out << num(s.real()) << ',' << num(s.imag()) << ',' << num(psi.real()) << ','
          << num(psi.imag()) << ',' << num(p1.real()) << ',' << num(p1.imag()) << ',' << p2re
          << ',' << p2im << '\n';
    }
  }
}

}  // namespace levywalk

#include "hillband/discriminant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hillband/errors.hpp"

namespace hillband {

namespace {

double parity(int n) { return n % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

DiscriminantModel::DiscriminantModel(int period, cplx impurity)
    : period_(period), impurity_(impurity) {
  if (period_ < 1) {
    throw std::invalid_argument("DiscriminantModel: period must be >= 1, got " +
                                std::to_string(period_));
  }
}

DiscriminantModel DiscriminantModel::from_potential(const Potential& pot) {
  if (!pot.is_sparse()) {
    throw DegenerateInput("closed form requires a sparse potential");
  }
  return {pot.period(), pot.impurity()};
}

cplx DiscriminantModel::eval(cplx E) const {
  const cplx z = 0.5 * E;
  return 2.0 * cheb_eval(ChebKind::First, period_, z) -
         impurity_ * cheb_eval(ChebKind::Second, period_ - 1, z);
}

cplx DiscriminantModel::eval_derivative(cplx E) const {
  const cplx z = 0.5 * E;
  const double L = period_;
  const cplx u = cheb_eval(ChebKind::Second, period_ - 1, z);
  if (std::abs(E - 2.0) < kEdgeGuard || std::abs(E + 2.0) < kEdgeGuard) {
    return L * u - 0.5 * impurity_ * cheb_deriv(ChebKind::Second, period_ - 1, z);
  }
  const cplx t = cheb_eval(ChebKind::First, period_, z);
  return L * u - impurity_ * (2.0 * L * t - E * u) / (E * E - 4.0);
}

DiscriminantJet DiscriminantModel::jet(cplx E) const {
  const cplx z = 0.5 * E;
  const ChebJet t = cheb_jet(ChebKind::First, period_, z);
  const ChebJet u = cheb_jet(ChebKind::Second, period_ - 1, z);
  return {2.0 * t.value - impurity_ * u.value,
          t.d1 - 0.5 * impurity_ * u.d1,
          0.5 * t.d2 - 0.25 * impurity_ * u.d2};
}

double DiscriminantModel::alpha(int j) const {
  if (j < 1 || j > period_) {
    throw std::out_of_range("alpha index " + std::to_string(j) + " outside 1.." +
                            std::to_string(period_));
  }
  return 2.0 * std::sin((period_ - 2.0 * j + 1.0) * std::numbers::pi / (2.0 * period_));
}

double DiscriminantModel::beta(int k) const {
  if (k < 1 || k > period_ - 1) {
    throw std::out_of_range("beta index " + std::to_string(k) + " outside 1.." +
                            std::to_string(period_ - 1));
  }
  return 2.0 * std::sin((period_ - 2.0 * k) * std::numbers::pi / (2.0 * period_));
}

SpecialValues special_values(const DiscriminantModel& model) {
  const int L = model.period();
  const cplx v = model.impurity();
  SpecialValues out{2.0 - static_cast<double>(L) * v,
                    parity(L) * (2.0 + static_cast<double>(L) * v),
                    {}};
  out.at_beta.reserve(static_cast<std::size_t>(L > 1 ? L - 1 : 0));
  for (int k = 1; k < L; ++k) out.at_beta.emplace_back(2.0 * parity(k));
  return out;
}

TaylorExpansion taylor_at(const DiscriminantModel& model, TaylorPoint point) {
  const int L = model.period();
  const cplx v = model.impurity();
  const SpecialValues special = special_values(model);

  struct Visitor {
    const DiscriminantModel& model;
    const SpecialValues& special;
    int L;
    cplx v;

    TaylorExpansion operator()(AlphaNode node) const {
      const double center = model.alpha(node.j);
      const double theta = (2.0 * node.j - 1.0) * std::numbers::pi / (2.0 * L);
      const cplx value = v * parity(node.j) / std::sin(theta);
      return {center, value, model.eval_derivative(center)};
    }
    TaylorExpansion operator()(BetaNode node) const {
      const double center = model.beta(node.k);
      return {center, special.at_beta[static_cast<std::size_t>(node.k - 1)],
              model.eval_derivative(center)};
    }
    TaylorExpansion operator()(PlusTwo) const {
      return {2.0, special.at_plus2, model.eval_derivative(2.0)};
    }
    TaylorExpansion operator()(MinusTwo) const {
      return {-2.0, special.at_minus2, model.eval_derivative(-2.0)};
    }
  };
  return std::visit(Visitor{model, special, L, v}, point);
}

cplx beta_slope(const DiscriminantModel& model, int k) {
  const int L = model.period();
  if (k < 1 || k > L - 1) {
    throw std::out_of_range("beta index " + std::to_string(k) + " outside 1.." +
                            std::to_string(L - 1));
  }
  const double s = std::sin(k * std::numbers::pi / L);
  return model.impurity() * static_cast<double>(L) * parity(k) / (2.0 * s * s);
}

cplx derivative_at_plus_two(const DiscriminantModel& model) {
  const double L = model.period();
  return L * L - model.impurity() * L * (L * L - 1.0) / 6.0;
}

cplx derivative_at_minus_two(const DiscriminantModel& model) {
  const double L = model.period();
  return parity(model.period() + 1) * (L * L + model.impurity() * L * (L * L - 1.0) / 6.0);
}

}  // namespace hillband

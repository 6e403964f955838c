#include "hillband/transfer.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hillband {

namespace {

Transfer2x2 free_step(cplx E) { return {E, -1.0, 1.0, 0.0}; }

Transfer2x2 power(Transfer2x2 base, int exponent) {
  Transfer2x2 result = Transfer2x2::identity();
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace

Potential::Potential(int period, cplx impurity, int layout,
                     std::optional<std::vector<cplx>> values)
    : period_(period), impurity_(impurity), layout_(layout), general_values_(std::move(values)) {
  if (period_ < 1) {
    throw std::invalid_argument("Potential: period must be >= 1, got " + std::to_string(period_));
  }
  if (layout_ < 1 || layout_ > period_) {
    throw std::invalid_argument("Potential: layout index " + std::to_string(layout_) +
                                " outside 1.." + std::to_string(period_));
  }
  if (general_values_ && static_cast<int>(general_values_->size()) != period_) {
    throw std::invalid_argument("Potential: general_values length differs from period");
  }
}

Potential Potential::sparse(int period, cplx impurity, int layout) {
  return Potential(period, impurity, layout, std::nullopt);
}

Potential Potential::general(std::vector<cplx> values) {
  const int period = static_cast<int>(values.size());
  const cplx first = values.empty() ? cplx{} : values.front();
  return Potential(period, first, 1, std::move(values));
}

cplx Potential::value_at(int n) const {
  if (n < 1 || n > period_) {
    throw std::out_of_range("Potential: site " + std::to_string(n) + " outside 1.." +
                            std::to_string(period_));
  }
  if (general_values_) return (*general_values_)[static_cast<std::size_t>(n - 1)];
  return n == layout_ ? impurity_ : cplx{0.0};
}

Transfer2x2 step_matrix(const Potential& pot, int n, cplx E) {
  return {E - pot.value_at(n), -1.0, 1.0, 0.0};
}

Transfer2x2 monodromy(const Potential& pot, cplx E, MonodromyOptions options) {
  if (options.fast_free_power && pot.is_sparse()) {
    const Transfer2x2 free = free_step(E);
    const int p = pot.layout();
    return power(free, pot.period() - p) * step_matrix(pot, p, E) * power(free, p - 1);
  }
  Transfer2x2 m = step_matrix(pot, 1, E);
  for (int n = 2; n <= pot.period(); ++n) m = step_matrix(pot, n, E) * m;
  return m;
}

cplx discriminant_via_transfer(const Potential& pot, cplx E, MonodromyOptions options) {
  return monodromy(pot, E, options).trace();
}

cplx power_trace(int n, cplx E) {
  if (n < 1) throw std::invalid_argument("power_trace: n must be >= 1");
  const Transfer2x2 free = free_step(E);
  Transfer2x2 m = free;
  for (int k = 1; k < n; ++k) m = free * m;
  return m.trace();
}

}  // namespace hillband

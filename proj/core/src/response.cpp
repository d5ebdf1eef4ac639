#include "dispersion/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dispersion/error.hpp"

namespace dispersion {

TwoLevelResponse TwoLevelResponse::from_dipole(double frequency,
                                               double dipole_squared) {
  if (!(frequency > 0.0)) throw DomainError("transition frequency must be positive");
  return {frequency, 2.0 * dipole_squared / (3.0 * frequency)};
}

double TwoLevelResponse::dipole_squared() const noexcept {
  return 1.5 * frequency * static_value;
}

namespace detail {

double evaluate(const ResponseModel& m, double xi) noexcept {
  if (const auto* s = std::get_if<StaticResponse>(&m)) return s->value;
  if (const auto* t = std::get_if<TwoLevelResponse>(&m)) {
    const double w2 = t->frequency * t->frequency;
    return t->static_value * w2 / (w2 + xi * xi);
  }
  double sum = 0.0;
  for (const auto& o : std::get<MultiOscillatorResponse>(m).oscillators) {
    const double w2 = o.frequency * o.frequency;
    sum += o.weight * w2 / (w2 + xi * xi);
  }
  return sum;
}

double static_value(const ResponseModel& m) noexcept { return evaluate(m, 0.0); }

double min_frequency(const ResponseModel& m) noexcept {
  if (std::holds_alternative<StaticResponse>(m)) return 0.0;
  if (const auto* t = std::get_if<TwoLevelResponse>(&m)) return t->frequency;
  double w = std::numeric_limits<double>::infinity();
  for (const auto& o : std::get<MultiOscillatorResponse>(m).oscillators)
    if (o.weight != 0.0) w = std::min(w, o.frequency);
  return std::isfinite(w) ? w : 0.0;
}

double max_frequency(const ResponseModel& m) noexcept {
  if (std::holds_alternative<StaticResponse>(m)) return 0.0;
  if (const auto* t = std::get_if<TwoLevelResponse>(&m)) return t->frequency;
  double w = 0.0;
  for (const auto& o : std::get<MultiOscillatorResponse>(m).oscillators)
    if (o.weight != 0.0) w = std::max(w, o.frequency);
  return w;
}

void validate(const ResponseModel& m) {
  if (const auto* s = std::get_if<StaticResponse>(&m)) {
    if (s->value < 0.0) throw DomainError("static response must be >= 0");
    return;
  }
  if (const auto* t = std::get_if<TwoLevelResponse>(&m)) {
    if (!(t->frequency > 0.0)) throw DomainError("transition frequency must be positive");
    if (t->static_value < 0.0) throw DomainError("static response must be >= 0");
    return;
  }
  for (const auto& o : std::get<MultiOscillatorResponse>(m).oscillators) {
    if (!(o.frequency > 0.0)) throw DomainError("oscillator frequency must be positive");
    if (o.weight < 0.0) throw DomainError("oscillator weight must be >= 0");
  }
}

}  // namespace detail

Polarizability::Polarizability(ResponseModel model) : model_(std::move(model)) {
  detail::validate(model_);
}

double Polarizability::dipole_squared() const {
  if (std::holds_alternative<StaticResponse>(model_))
    throw DomainError("a static polarizability has no finite <d^2>");
  if (const auto* t = std::get_if<TwoLevelResponse>(&model_)) return t->dipole_squared();
  double sum = 0.0;
  for (const auto& o : std::get<MultiOscillatorResponse>(model_).oscillators)
    sum += 1.5 * o.frequency * o.weight;
  return sum;
}

Magnetizability::Magnetizability(ResponseModel model) : model_(std::move(model)) {
  detail::validate(model_);
}

}  // namespace dispersion

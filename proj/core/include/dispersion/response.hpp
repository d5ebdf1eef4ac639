#pragma once

// Isotropic atomic response on the imaginary axis: electric polarizability
// alpha(i xi) and magnetizability beta(i xi). Natural units (eps0 = mu0 = 1),
// so both carry the dimension of a volume.

#include <variant>
#include <vector>

namespace dispersion {

struct StaticResponse {
  double value = 0.0;  // alpha(i xi) = value for every xi
};

// alpha(i xi) = alpha0 w^2 / (w^2 + xi^2)
struct TwoLevelResponse {
  double frequency = 1.0;
  double static_value = 0.0;

  // alpha(0) = 2 |d01|^2 / (3 w) for an isotropic two-level atom.
  static TwoLevelResponse from_dipole(double frequency, double dipole_squared);
  double dipole_squared() const noexcept;
};

struct Oscillator {
  double frequency = 1.0;
  double weight = 0.0;  // static contribution alpha_k(0)
};

// alpha(i xi) = sum_k weight_k w_k^2 / (w_k^2 + xi^2)
struct MultiOscillatorResponse {
  std::vector<Oscillator> oscillators;
};

using ResponseModel =
    std::variant<StaticResponse, TwoLevelResponse, MultiOscillatorResponse>;

namespace detail {
double evaluate(const ResponseModel& m, double xi) noexcept;
double static_value(const ResponseModel& m) noexcept;
double min_frequency(const ResponseModel& m) noexcept;
double max_frequency(const ResponseModel& m) noexcept;
void validate(const ResponseModel& m);
}  // namespace detail

class Polarizability {
 public:
  Polarizability() = default;
  Polarizability(ResponseModel model);  // NOLINT(google-explicit-constructor)

  double operator()(double xi) const noexcept { return detail::evaluate(model_, xi); }
  double static_value() const noexcept { return detail::static_value(model_); }
  // <0| d^2 |0>; throws for a static (frequency-free) model.
  double dipole_squared() const;
  double min_frequency() const noexcept { return detail::min_frequency(model_); }
  double max_frequency() const noexcept { return detail::max_frequency(model_); }
  bool vanishes() const noexcept { return static_value() == 0.0; }
  const ResponseModel& model() const noexcept { return model_; }

 private:
  ResponseModel model_ = StaticResponse{};
};

class Magnetizability {
 public:
  Magnetizability() = default;
  Magnetizability(ResponseModel model);  // NOLINT(google-explicit-constructor)

  double operator()(double xi) const noexcept { return detail::evaluate(model_, xi); }
  double static_value() const noexcept { return detail::static_value(model_); }
  double min_frequency() const noexcept { return detail::min_frequency(model_); }
  double max_frequency() const noexcept { return detail::max_frequency(model_); }
  bool vanishes() const noexcept { return static_value() == 0.0; }
  const ResponseModel& model() const noexcept { return model_; }

 private:
  ResponseModel model_ = StaticResponse{};
};

}  // namespace dispersion

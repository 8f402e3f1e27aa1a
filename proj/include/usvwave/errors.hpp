#ifndef USVWAVE_ERRORS_HPP
#define USVWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace usvwave {

/// Matrix that must be invertible is numerically singular. Carries the name
/// of the offending parameter so the caller can fix the configuration.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& parameter)
      : std::runtime_error("singular matrix: " + parameter), parameter_(parameter) {}

  const std::string& parameter() const { return parameter_; }

 private:
  std::string parameter_;
};

/// Numerical failure inside the estimator (e.g. non-invertible innovation
/// covariance). Carries the sensor kind and measurement stamp for context.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, const std::string& sensor, double stamp)
      : std::runtime_error(what + " (sensor=" + sensor + ", stamp=" + std::to_string(stamp) + ")"),
        sensor_(sensor),
        stamp_(stamp) {}

  const std::string& sensor() const { return sensor_; }
  double stamp() const { return stamp_; }

 private:
  std::string sensor_;
  double stamp_;
};

/// Scenario configuration failed schema validation. Carries the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config error at '" + key + "': " + what), key_(key) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Truth integration hit the Euler-angle gimbal singularity (|pitch| >= pi/2).
class GimbalSingularityError : public std::runtime_error {
 public:
  explicit GimbalSingularityError(double pitch, double time)
      : std::runtime_error("gimbal singularity: |pitch|=" + std::to_string(pitch) +
                           " rad at t=" + std::to_string(time) + " s; scenario invalid") {}
};

}  // namespace usvwave

#endif  // USVWAVE_ERRORS_HPP

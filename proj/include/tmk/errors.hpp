#pragma once

#include <stdexcept>
#include <string>

namespace tmk {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Expression language.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class ArityError : public Error {
public:
  using Error::Error;
};

class UnknownSymbol : public Error {
public:
  using Error::Error;
};

// Numerical evaluation.
class DomainError : public Error {
public:
  using Error::Error;
};

class OrderExceeded : public Error {
public:
  using Error::Error;
};

// Geometry.
class SingularMetric : public Error {
public:
  using Error::Error;
};

class AsymmetricMetric : public Error {
public:
  using Error::Error;
};

class NullVector : public Error {
public:
  using Error::Error;
};

// Model construction.
class NotPositiveDefinite : public Error {
public:
  using Error::Error;
};

class SingularRho : public Error {
public:
  using Error::Error;
};

class EmptyDomain : public Error {
public:
  using Error::Error;
};

class DegenerateLambda : public Error {
public:
  using Error::Error;
};

class ChartSingularity : public Error {
public:
  using Error::Error;
};

class DimensionTooSmall : public Error {
public:
  using Error::Error;
};

// Front door.
class ConfigError : public Error {
public:
  ConfigError(const std::string& what, const std::string& json_pointer)
      : Error(what + " [config path " + json_pointer + "]"),
        pointer_(json_pointer) {}
  const std::string& pointer() const { return pointer_; }

private:
  std::string pointer_;
};

class IOError : public Error {
public:
  using Error::Error;
};

}  // namespace tmk

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A target signal (or the sum of all targets) has zero energy.
class ZeroTargetEnergy : public Error {
 public:
  /// `channel` is the offending column, or npos when the total energy is zero.
  explicit ZeroTargetEnergy(std::size_t channel = npos)
      : Error(channel == npos ? "total target energy is zero"
                              : "target column " + std::to_string(channel) + " has zero energy"),
        channel_(channel) {}

  std::size_t channel() const { return channel_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t channel_;
};

/// No valid coloring of the overlap graph exists with the available channels.
class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& what, std::size_t component = npos)
      : Error(what), component_(component) {}

  /// Index of the connected component that failed, if known.
  std::size_t component() const { return component_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t component_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

}  // namespace pit

#pragma once

#include <stdexcept>
#include <string>

namespace rcfd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class UnmappedNode : public Error {
 public:
  using Error::Error;
};

class NoCandidate : public Error {
 public:
  using Error::Error;
};

class DegenerateNetwork : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class ZeroDuration : public Error {
 public:
  using Error::Error;
};

class NoTerminalPackets : public Error {
 public:
  using Error::Error;
};

class StateSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace rcfd

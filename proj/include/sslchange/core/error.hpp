#pragma once

#include <stdexcept>
#include <string>

namespace sslchange {

enum class ErrorKind {
  config,      // invalid configuration or arguments
  data,        // malformed dataset content
  io,          // filesystem / codec failures
  state,       // operation called in an invalid object state
  shape,       // tensor shape contract violation
  divergence,  // non-finite loss during training
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::config: return "config";
      case ErrorKind::data: return "data";
      case ErrorKind::io: return "io";
      case ErrorKind::state: return "state";
      case ErrorKind::shape: return "shape";
      case ErrorKind::divergence: return "divergence";
      default: return "internal";
    }
  }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::config: return 2;
      case ErrorKind::data: return 3;
      case ErrorKind::io: return 4;
      case ErrorKind::state: return 5;
      case ErrorKind::shape: return 6;
      case ErrorKind::divergence: return 7;
      default: return 10;
    }
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorKind::config, msg); }
[[noreturn]] inline void throw_data(const std::string& msg) { throw Error(ErrorKind::data, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::io, msg); }
[[noreturn]] inline void throw_state(const std::string& msg) { throw Error(ErrorKind::state, msg); }
[[noreturn]] inline void throw_shape(const std::string& msg) { throw Error(ErrorKind::shape, msg); }
[[noreturn]] inline void throw_divergence(const std::string& msg) { throw Error(ErrorKind::divergence, msg); }

#define SSLCHANGE_CHECK(cond, kind, msg)                  \
  do {                                                    \
    if (!(cond)) throw ::sslchange::Error(kind, (msg));   \
  } while (0)

}  // namespace sslchange
